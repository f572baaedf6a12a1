"""Multilinear graded polynomials with involution, elementary identities and the rank oracle.

A monomial over variables x_0..x_{m-1} of degrees U is given by an ordering
``theta`` and a bit per variable ``I``:

    iota^I[theta[0]](x_theta[0]) * ... * iota^I[theta[m-1]](x_theta[m-1]).

Identity testing substitutes x_i -> X_U[i] only.  That suffices for multilinear
polynomials: every homogeneous substitution is a scalar multiple of the basis
one (components are 1-dimensional) and iota is linear, so the value changes by
the same nonzero scalar for every term.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import Monomial
from .config import LIMITS
from .cyclo import CycNumber, rank, root_power, totient
from .errors import FormatError, PreconditionError
from .groups import GroupMap, GroupTable
from .involution import Involution, apply_monomial


@dataclass(frozen=True)
class IotaMonomial:
    U: tuple[int, ...]
    theta: tuple[int, ...]
    I: tuple[int, ...]

    def __post_init__(self):
        m = len(self.U)
        if sorted(self.theta) != list(range(m)):
            raise PreconditionError(f"theta {self.theta} is not a permutation of 0..{m - 1}")
        if len(self.I) != m or any(b not in (0, 1) for b in self.I):
            raise PreconditionError(f"I must be {m} bits")

    @property
    def m(self) -> int:
        return len(self.U)

    def __str__(self):
        parts = []
        for i in self.theta:
            parts.append(f"iota(x{i + 1})" if self.I[i] else f"x{i + 1}")
        return "*".join(parts) if parts else "1"


@dataclass
class MultilinearPoly:
    U: tuple[int, ...]
    terms: list[tuple[CycNumber, tuple[int, ...], tuple[int, ...]]]

    @property
    def m(self) -> int:
        return len(self.U)

    def monomials(self):
        for c, theta, I in self.terms:
            yield c, IotaMonomial(self.U, theta, I)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{IotaMonomial(self.U, th, I)}" for c, th, I in self.terms)


def monomial_degree(mon: IotaMonomial, group: GroupTable, tau: GroupMap) -> int:
    out = 0
    for i in mon.theta:
        u = mon.U[i]
        out = group.table[out][tau.image[u] if mon.I[i] else u]
    return out


def evaluate_monomial(mon: IotaMonomial, iota: Involution) -> Monomial:
    """Value of the monomial at x_i = X_U[i]."""
    A = iota.algebra
    acc = A.unit_monomial()
    for i in mon.theta:
        x = Monomial(0, mon.U[i])
        if mon.I[i]:
            x = apply_monomial(iota, x)
        acc = A.mul(acc, x)
    return acc


def all_monomials(U, use_involution: bool = True):
    """(theta, I) pairs in lexicographic order of (theta, I)."""
    m = len(U)
    bits = list(itertools.product((0, 1), repeat=m)) if use_involution else [(0,) * m]
    for theta in itertools.permutations(range(m)):
        for I in bits:
            yield theta, I


def _elementary_cap(group: GroupTable) -> int:
    return LIMITS.elementary_cap if LIMITS.elementary_cap is not None else group.order


def elementary_identities(U, iota: Involution, cap: int | None = None) -> list[MultilinearPoly]:
    """Binomial identities member - alpha * canonical, one per non-canonical monomial.

    Monomials are grouped by T-degree; the lexicographically least (theta, I) of
    each class is its canonical representative and alpha is the ratio of the
    two evaluations.
    """
    U = tuple(U)
    if cap is None:
        cap = _elementary_cap(iota.group)
    if len(U) > cap:
        raise PreconditionError(f"length {len(U)} exceeds the elementary-identity cap {cap}")
    n = iota.n
    canon: dict[int, tuple[tuple, tuple, int]] = {}
    out = []
    for theta, I in all_monomials(U):
        val = evaluate_monomial(IotaMonomial(U, theta, I), iota)
        if val.u not in canon:
            canon[val.u] = (theta, I, val.e)
            continue
        ctheta, cI, ce = canon[val.u]
        alpha = root_power(val.e - ce, n)
        out.append(MultilinearPoly(U, [(CycNumber.from_int(1, n), theta, I), (-alpha, ctheta, cI)]))
    return out


def evaluate(f: MultilinearPoly, iota: Involution) -> dict[int, CycNumber]:
    """Value of f at x_i = X_U[i], as degree -> coefficient (zero components dropped)."""
    totals: dict[int, CycNumber] = {}
    for c, mon in f.monomials():
        val = evaluate_monomial(mon, iota)
        term = c * root_power(val.e, iota.n)
        totals[val.u] = totals[val.u] + term if val.u in totals else term
    return {w: c for w, c in totals.items() if not c.is_zero()}


def is_identity(f: MultilinearPoly, iota: Involution) -> bool:
    """Exact test; non-multilinear terms raise PreconditionError."""
    if any(not 0 <= u < iota.group.order for u in f.U):
        raise PreconditionError("variable degree outside the group")
    return not evaluate(f, iota)


def evaluation_rows(U, iota: Involution, use_involution: bool = True) -> list[list[CycNumber]]:
    """One row per spanning monomial: its value as a coordinate vector over the X_w basis."""
    k, n = iota.group.order, iota.n
    zero = CycNumber(n)
    rows = []
    for theta, I in all_monomials(tuple(U), use_involution):
        val = evaluate_monomial(IotaMonomial(tuple(U), theta, I), iota)
        row = [zero] * k
        row[val.u] = root_power(val.e, n)
        rows.append(row)
    return rows


def multilinear_dimension(U, iota: Involution, use_involution: bool = True, cap: int | None = None) -> int:
    """Dimension of the multilinear space in variables of degrees U modulo identities (a rank)."""
    cap = LIMITS.oracle_cap if cap is None else cap
    if len(U) > cap:
        raise PreconditionError(f"length {len(U)} exceeds the oracle cap {cap}")
    return rank(evaluation_rows(U, iota, use_involution))


def canonical_monomials(U, iota: Involution, use_involution: bool = True) -> list[tuple[tuple, tuple]]:
    """The lexicographically least (theta, I) of each degree class."""
    seen = {}
    for theta, I in all_monomials(tuple(U), use_involution):
        w = evaluate_monomial(IotaMonomial(tuple(U), theta, I), iota).u
        seen.setdefault(w, (theta, I))
    return list(seen.values())


def count_monomials(m: int, use_involution: bool = True) -> int:
    return math.factorial(m) * (2**m if use_involution else 1)


# ---------------------------------------------------------------- file format


def _fmt_cyc(c: CycNumber, n: int) -> str:
    return " ".join(str(x) for x in c.embed(n).coeffs)


def format_poly(f: MultilinearPoly, n: int) -> str:
    lines = ["mlpoly v1", f"m {f.m} degrees {' '.join(map(str, f.U))} root {n}"]
    for c, theta, I in f.terms:
        lines.append(f"coeff {_fmt_cyc(c, n)} theta {' '.join(map(str, theta))} iota {' '.join(map(str, I))}")
    return "\n".join(lines) + "\n"


def parse_polys(text: str) -> list[tuple[MultilinearPoly, int]]:
    """Parse one or more concatenated ``mlpoly v1`` blocks; returns (poly, root order) pairs."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    blocks: list[list[str]] = []
    for ln in lines:
        if ln == "mlpoly v1":
            blocks.append([])
        elif not blocks:
            raise FormatError("expected header 'mlpoly v1'")
        else:
            blocks[-1].append(ln)
    if not blocks:
        raise FormatError("expected header 'mlpoly v1'")
    return [_parse_block(b) for b in blocks]


def _parse_block(lines: list[str]) -> tuple[MultilinearPoly, int]:
    if not lines:
        raise FormatError("empty mlpoly block")
    head = lines[0].split()
    try:
        if head[0] != "m" or head[2] != "degrees" or head[-2] != "root":
            raise FormatError("expected 'm <m> degrees u_1 ... u_m root <n>'")
        m, n = int(head[1]), int(head[-1])
        U = tuple(int(x) for x in head[3:-2])
    except (IndexError, ValueError):
        raise FormatError("expected 'm <m> degrees u_1 ... u_m root <n>'") from None
    if len(U) != m:
        raise FormatError(f"{len(U)} degrees given for m={m}")
    d = totient(n)
    terms = []
    for ln in lines[1:]:
        tok = ln.split()
        try:
            if tok[0] != "coeff" or tok[1 + d] != "theta" or tok[2 + d + m] != "iota" or len(tok) != 3 + d + 2 * m:
                raise FormatError(f"bad term line {ln!r}")
            c = CycNumber(n, [Fraction(x) for x in tok[1 : 1 + d]])
            theta = tuple(int(x) for x in tok[2 + d : 2 + d + m])
            I = tuple(int(x) for x in tok[3 + d + m :])
        except (IndexError, ValueError, ZeroDivisionError):
            raise FormatError(f"bad term line {ln!r}") from None
        try:
            IotaMonomial(U, theta, I)
        except PreconditionError as exc:
            raise FormatError(f"not multilinear: {exc}") from None
        terms.append((c, theta, I))
    return MultilinearPoly(U, terms), n


def load_polys(path) -> list[tuple[MultilinearPoly, int]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return parse_polys(text)


def degree_classes(U, iota: Involution, use_involution: bool = True) -> dict[int, list]:
    """All (theta, I) grouped by T-degree."""
    out = defaultdict(list)
    for theta, I in all_monomials(tuple(U), use_involution):
        out[monomial_degree(IotaMonomial(tuple(U), theta, I), iota.group, iota.tau)].append((theta, I))
    return dict(out)
