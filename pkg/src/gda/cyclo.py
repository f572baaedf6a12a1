"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Numbers are stored as coordinates in the power basis 1, z, ..., z^(phi(n)-1)
reduced modulo the n-th cyclotomic polynomial.  Binary operations on numbers of
different root orders lift both operands to Q(zeta_lcm).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .config import LIMITS
from .errors import PreconditionError

# ---------------------------------------------------------------- integer polynomials
# Polynomials are tuples of coefficients, constant term first, no trailing zeros.


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _monic_divmod(a, b):
    """Division of integer polynomials by a monic divisor."""
    a = list(a)
    b = _trim(b)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n with integer coefficients, by dividing x^n - 1 by Phi_d for every proper divisor d."""
    if not 1 <= n <= LIMITS.max_root_order:
        raise PreconditionError(f"root order {n} outside 1..{LIMITS.max_root_order}")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p, r = _monic_divmod(p, cyclotomic_polynomial(d))
            assert not r
    return tuple(p)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of z^e, 0 <= e < n, reduced modulo Phi_n (all integral)."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z, then reduce the z^d term with the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


# ---------------------------------------------------------------- numbers


@dataclass(frozen=True)
class RootExponent:
    """The root of unity zeta_n^e."""

    e: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("root order must be positive")
        object.__setattr__(self, "e", self.e % self.n)


def rescale_order(r: RootExponent, n2: int) -> RootExponent:
    if n2 % r.n:
        raise PreconditionError(f"{r.n} does not divide {n2}")
    return RootExponent(r.e * (n2 // r.n), n2)


class CycNumber:
    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        d = totient(n)
        if coeffs is None:
            coeffs = (Fraction(0),) * d
        else:
            coeffs = tuple(Fraction(c) for c in coeffs)
            if len(coeffs) != d:
                raise ValueError(f"expected {d} coordinates for n={n}")
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def from_int(cls, x, n: int = 1) -> CycNumber:
        c = [Fraction(0)] * totient(n)
        c[0] = Fraction(x)
        return cls(n, c)

    @classmethod
    def _raw(cls, n, coeffs):
        obj = cls.__new__(cls)
        obj.n = n
        obj.coeffs = coeffs
        return obj

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def embed(self, n2: int) -> CycNumber:
        """Image under Q(zeta_n) -> Q(zeta_n2), zeta_n -> zeta_n2^(n2/n)."""
        if n2 == self.n:
            return self
        if n2 % self.n:
            raise PreconditionError(f"{self.n} does not divide {n2}")
        step = n2 // self.n
        table = _power_table(n2)
        out = [Fraction(0)] * totient(n2)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(j * step) % n2]):
                    if t:
                        out[i] += c * t
        return CycNumber._raw(n2, tuple(out))

    def _unify(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.from_int(other, self.n)
        if other.n == self.n:
            return self, other
        n = math.lcm(self.n, other.n)
        return self.embed(n), other.embed(n)

    def __add__(self, other):
        a, b = self._unify(other)
        return CycNumber._raw(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._raw(self.n, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber._raw(self.n, tuple(x * other for x in self.coeffs))
        a, b = self._unify(other)
        return CycNumber._raw(a.n, _reduce(_pmul(a.coeffs, b.coeffs), a.n))

    __rmul__ = __mul__

    def inverse(self) -> CycNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        # extended Euclid over Q[x]: s*a + t*Phi = g, g a nonzero constant
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        r0, r1 = phi, _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        g = r1[0]
        return CycNumber._raw(self.n, _reduce([c / g for c in s1], self.n))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        a, b = self._unify(other)
        return a * b.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.from_int(other, self.n)
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._unify(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # equal numbers may live in different fields; only the rational part is order-independent
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash("cyc")

    def __repr__(self):
        return f"CycNumber({self.n}, {self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                if not mono:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _psub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def _qdivmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a)


def _reduce(p, n: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial modulo Phi_n to phi(n) coordinates."""
    d = totient(n)
    table = _power_table(n)
    out = [Fraction(0)] * d
    for j, c in enumerate(p):
        if not c:
            continue
        if j < d:
            out[j] += c
        else:
            for i, t in enumerate(table[j % n]):
                if t:
                    out[i] += c * t
    return tuple(out)


def cyc_add(a: CycNumber, b: CycNumber) -> CycNumber:
    return a + b


def cyc_mul(a: CycNumber, b: CycNumber) -> CycNumber:
    return a * b


def cyc_inv(a: CycNumber) -> CycNumber:
    return a.inverse()


def cyc_is_zero(a: CycNumber) -> bool:
    return a.is_zero()


@lru_cache(maxsize=65536)
def root_power(e: int, n: int) -> CycNumber:
    """zeta_n^e as a canonical CycNumber."""
    return CycNumber._raw(n, tuple(Fraction(t) for t in _power_table(n)[e % n]))


# ---------------------------------------------------------------- rank


def rank(rows, fast: bool | None = None) -> int:
    """Rank over Q(zeta_n) of a matrix given as a list of rows of CycNumbers.

    With ``fast`` (default: the configured flag) the rank is first computed over
    two prime fields F_p with p = 1 mod n; exact elimination runs only if they
    disagree.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if fast is None:
        fast = LIMITS.fast_path
    if fast:
        n = math.lcm(*(x.n for r in rows for x in r))
        p1, p2 = _split_primes(n, 2)
        r1, r2 = modular_rank(rows, n, p1), modular_rank(rows, n, p2)
        if r1 == r2:
            return r1
    return exact_rank(rows)


def exact_rank(rows) -> int:
    pivots: list[tuple[int, list]] = []  # (pivot column, normalized row)
    for row in rows:
        row = list(row)
        for col, prow in pivots:
            c = row[col]
            if not c.is_zero():
                row = [x - c * y for x, y in zip(row, prow)]
        lead = next((j for j, x in enumerate(row) if not x.is_zero()), None)
        if lead is None:
            continue
        inv = row[lead].inverse()
        row = [x * inv for x in row]
        # keep the basis fully reduced so each pivot column is a unit vector
        pivots = [(col, [x - prow[lead] * y for x, y in zip(prow, row)]) for col, prow in pivots]
        pivots.append((lead, row))
        if len(pivots) == len(row):
            break
    return len(pivots)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _split_primes(n: int, count: int, start: int = 10**6) -> list[int]:
    out = []
    p = start - start % n + 1
    while len(out) < count:
        if _is_prime(p):
            out.append(p)
        p += n
    return out


def _primitive_root_of_unity(n: int, p: int) -> int:
    for g in range(2, p):
        z = pow(g, (p - 1) // n, p)
        if all(pow(z, n // q, p) != 1 for q in range(2, n + 1) if n % q == 0 and _is_prime(q)):
            return z
    return 1


def modular_rank(rows, n: int, p: int) -> int:
    """Rank after mapping zeta_n to a primitive n-th root of unity in F_p."""
    z = _primitive_root_of_unity(n, p) if n > 1 else 1

    def image(x: CycNumber) -> int:
        x = x.embed(n)
        acc = 0
        for i, c in enumerate(x.coeffs):
            if c:
                acc += c.numerator * pow(c.denominator, -1, p) * pow(z, i, p)
        return acc % p

    mat = [[image(x) for x in r] for r in rows]
    r = 0
    ncols = len(mat[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        r += 1
    return r
