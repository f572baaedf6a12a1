"""Graded and graded-involution codimensions of F^sigma T.

    c_m^T      = sum over s in T^m of |B_s|,    B_s   = products of s in every order
    c_m^{T,i}  = sum over s in T^m of |B_s^i|,  B_s^i = same, each factor u or tau(u)

Both depend only on the multiset of s, so the sums run over multisets with
multinomial weights.  Reachable sets are computed by dynamic programming over
sub-multisets (a sub-multiset's set is the union over its elements u of
R(S - u) * u), shared across all multisets of size <= m.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .config import LIMITS
from .errors import PreconditionError
from .groups import GroupMap, GroupTable
from .involution import check_tau
from .pi_engine import multilinear_dimension


@dataclass(frozen=True)
class MultisetClass:
    counts: tuple[int, ...]

    @property
    def m(self) -> int:
        return sum(self.counts)

    @property
    def weight(self) -> int:
        """Number of sequences in T^m with this multiset."""
        w = math.factorial(self.m)
        for c in self.counts:
            w //= math.factorial(c)
        return w

    @classmethod
    def of(cls, group: GroupTable, seq) -> MultisetClass:
        counts = [0] * group.order
        for u in seq:
            counts[u] += 1
        return cls(tuple(counts))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ReachableProducts:
    """Memoized sub-multiset DP for one group and optional tau."""

    def __init__(self, group: GroupTable, tau: GroupMap | None = None):
        self.group = group
        self.tau = tau
        k = group.order
        t = group.table
        factors = [{u} if tau is None else {u, tau.image[u]} for u in range(k)]
        # right multiplication of a bitmask set by the factor set of u
        self._right = [[sum(1 << t[p][f] for f in factors[u]) for p in range(k)] for u in range(k)]
        self.memo: dict[tuple[int, ...], int] = {(0,) * k: 1}

    def mask(self, counts: tuple[int, ...]) -> int:
        memo = self.memo
        got = memo.get(counts)
        if got is not None:
            return got
        # iterative fill to avoid deep recursion on large m
        stack = [counts]
        while stack:
            c = stack[-1]
            missing = []
            for u, x in enumerate(c):
                if x:
                    sub = c[:u] + (x - 1,) + c[u + 1 :]
                    if sub not in memo:
                        missing.append(sub)
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            if c in memo:
                continue
            out = 0
            for u, x in enumerate(c):
                if x:
                    right = self._right[u]
                    for p in _bits(memo[c[:u] + (x - 1,) + c[u + 1 :]]):
                        out |= right[p]
            memo[c] = out
        return memo[counts]

    def __call__(self, counts) -> frozenset[int]:
        return frozenset(_bits(self.mask(tuple(counts))))


def reachable_products(group: GroupTable, ms, tau: GroupMap | None = None) -> frozenset[int]:
    """B_s (or B_s^iota with tau) for a MultisetClass or an element sequence."""
    counts = ms.counts if isinstance(ms, MultisetClass) else MultisetClass.of(group, ms).counts
    if sum(counts) < 1:
        raise PreconditionError("m must be at least 1")
    out = ReachableProducts(group, tau)(counts)
    if tau is None:
        # one coset of the commutator subgroup
        assert len(out) <= len(group.commutator_subgroup)
    return out


def multisets(k: int, m: int):
    """All count vectors of length k summing to m, lexicographically."""
    if k == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in multisets(k - 1, m - first):
            yield (first,) + rest


def _check_budget(group: GroupTable, m: int) -> None:
    states = math.comb(m + group.order, group.order)
    if states > LIMITS.work_budget:
        raise PreconditionError(f"{states} DP states for m={m}, |T|={group.order} exceed the work budget {LIMITS.work_budget}")


def _codim(dp: ReachableProducts, m: int) -> int:
    total = 0
    for counts in multisets(dp.group.order, m):
        total += MultisetClass(counts).weight * dp.mask(counts).bit_count()
    return total


def graded_codim(group: GroupTable, m: int, dp: ReachableProducts | None = None) -> int:
    if m < 1:
        raise PreconditionError("m must be at least 1")
    _check_budget(group, m)
    return _codim(dp or ReachableProducts(group), m)


def graded_inv_codim(group: GroupTable, tau: GroupMap, m: int, dp: ReachableProducts | None = None) -> int:
    if m < 1:
        raise PreconditionError("m must be at least 1")
    check_tau(tau)
    _check_budget(group, m)
    return _codim(dp or ReachableProducts(group, tau), m)


# ---------------------------------------------------------------- records


def iroot(x: int, m: int) -> int:
    """floor(x ** (1/m)) for integers x >= 0."""
    if x < 2 or m == 1:
        return x
    r = 1 << ((x.bit_length() + m - 1) // m)  # r**m >= x
    while True:
        s = ((m - 1) * r + x // r ** (m - 1)) // m
        if s >= r:
            break
        r = s
    while r**m > x:
        r -= 1
    while (r + 1) ** m <= x:
        r += 1
    return r


ROOT_DIGITS = 4


def root_bracket(c: int, m: int, digits: int = ROOT_DIGITS) -> tuple[Fraction, Fraction]:
    """[lo, hi] with lo <= c^(1/m) <= hi, hi - lo <= 10^-digits, lo == hi when exact."""
    D = 10**digits
    a = iroot(c * D**m, m)
    lo = Fraction(a, D)
    hi = lo if a**m == c * D**m else Fraction(a + 1, D)
    return lo, hi


def fmt_decimal(x: Fraction, digits: int = ROOT_DIGITS) -> str:
    D = 10**digits
    a = x * D
    assert a.denominator == 1
    a = a.numerator
    return f"{a // D}.{a % D:0{digits}d}"


@dataclass
class CodimRecord:
    m: int
    c_graded: int
    c_involution: int | None
    lower: int
    upper_graded: int
    upper_involution: int
    root_trend: tuple[Fraction, Fraction]
    violations: list[str] = field(default_factory=list)
    validated: bool | None = None

    @property
    def status(self) -> str:
        if self.violations:
            return "violation:" + "+".join(self.violations)
        if self.c_involution is None:
            return "ok"
        return "ok-validated" if self.validated else "ok-formula-only"


def make_record(group: GroupTable, m: int, c: int, ci: int | None) -> CodimRecord:
    k = group.order
    kp = len(group.commutator_subgroup)
    rec = CodimRecord(
        m=m,
        c_graded=c,
        c_involution=ci,
        lower=k**m,
        upper_graded=kp * k**m,
        upper_involution=kp * k ** (m + 1),
        root_trend=root_bracket(ci if ci is not None else c, m),
    )
    if not rec.lower <= c:
        rec.violations.append("lower")
    if not c <= rec.upper_graded:
        rec.violations.append("upper_graded")
    if ci is not None:
        if not c <= ci:
            rec.violations.append("sandwich_lower")
        if not ci <= k * c:
            rec.violations.append("sandwich_upper")
        if not rec.lower <= ci <= rec.upper_involution:
            rec.violations.append("upper_involution")
    return rec


class BoundViolation(AssertionError):
    pass


def codim_table(group: GroupTable, tau: GroupMap | None, m_max: int, strict: bool = True) -> list[CodimRecord]:
    """Records for m = 1..m_max; with ``strict`` a failed bound raises BoundViolation."""
    if tau is not None:
        check_tau(tau)
    _check_budget(group, m_max)
    dp = ReachableProducts(group)
    dpi = ReachableProducts(group, tau) if tau is not None else None
    out = []
    for m in range(1, m_max + 1):
        c = _codim(dp, m)
        ci = _codim(dpi, m) if dpi is not None else None
        rec = make_record(group, m, c, ci)
        if strict and rec.violations:
            raise BoundViolation(f"m={m}: {rec.violations}")
        out.append(rec)
    return out


HEADER = [
    "m",
    "c_graded",
    "c_involution",
    "lower",
    "upper_graded",
    "upper_involution",
    "root_trend_lo",
    "root_trend_hi",
    "status",
]


def records_to_csv(records: list[CodimRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in records:
        w.writerow(
            [
                r.m,
                r.c_graded,
                "" if r.c_involution is None else r.c_involution,
                r.lower,
                r.upper_graded,
                r.upper_involution,
                fmt_decimal(r.root_trend[0]),
                fmt_decimal(r.root_trend[1]),
                r.status,
            ]
        )
    return buf.getvalue()


# ---------------------------------------------------------------- oracle gate


def oracle_inv_codim(iota, m: int, use_involution: bool = True) -> int:
    """Sum of rank-oracle dimensions over all U in T^m (independent of the counting formula)."""
    k = iota.group.order
    return sum(multilinear_dimension(U, iota, use_involution) for U in itertools.product(range(k), repeat=m))


def validate_records(records: list[CodimRecord], iota, max_m: int = 3, budget: int = 200_000) -> None:
    """Mark involution codimensions ``validated`` where the rank oracle reproduces them."""
    k = iota.group.order
    for r in records:
        if r.c_involution is None:
            continue
        cost = k**r.m * math.factorial(r.m) * 2**r.m
        if r.m > max_m or cost > budget:
            r.validated = False
            continue
        got = oracle_inv_codim(iota, r.m)
        r.validated = got == r.c_involution
        if not r.validated:
            r.violations.append(f"oracle_mismatch({got})")
