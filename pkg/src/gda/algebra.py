"""The twisted group algebra F^sigma T with basis X_u and X_u X_v = sigma(u, v) X_uv.

Monomials zeta^e X_u stay in exponent arithmetic; general elements carry exact
CycNumber coefficients, one per degree (every homogeneous component is 1-dimensional).
"""
from __future__ import annotations

from typing import NamedTuple

from .cohomology import Cocycle
from .cyclo import CycNumber, root_power
from .errors import PreconditionError


class Monomial(NamedTuple):
    """zeta_n^e X_u (n is the root order of the ambient algebra)."""

    e: int
    u: int


def mono_mul(a: Monomial, b: Monomial, sigma: Cocycle) -> Monomial:
    return Monomial((a.e + b.e + int(sigma.exps[a.u, b.u])) % sigma.n, sigma.group.table[a.u][b.u])


class AlgebraElement:
    """Sparse linear combination sum_u c_u X_u; zero coefficients are never stored."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: TwistedGroupAlgebra, terms=None):
        self.algebra = algebra
        clean = {}
        for u, c in (terms or {}).items():
            if not isinstance(c, CycNumber):
                c = CycNumber.from_int(c, algebra.n)
            if not c.is_zero():
                clean[int(u)] = c
        self.terms = clean

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra != self.algebra:
            raise PreconditionError("elements belong to different algebras")

    def __add__(self, other):
        return elem_add(self, other)

    def __sub__(self, other):
        return elem_add(self, other * -1)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return elem_mul(self, other)
        return AlgebraElement(self.algebra, {u: c * other for u, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms.keys() == other.terms.keys() and all(
            self.terms[u] == other.terms[u] for u in self.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def component(self, u: int) -> CycNumber:
        return self.terms.get(u, CycNumber(self.algebra.n))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})X_{u}" for u, c in sorted(self.terms.items()))


def elem_add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    terms = dict(x.terms)
    for u, c in y.terms.items():
        terms[u] = terms[u] + c if u in terms else c
    return AlgebraElement(x.algebra, terms)


def elem_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    A = x.algebra
    terms: dict[int, CycNumber] = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            m = A.mul(Monomial(0, u), Monomial(0, v))
            c = a * b * root_power(m.e, A.n)
            terms[m.u] = terms[m.u] + c if m.u in terms else c
    return AlgebraElement(A, terms)


class TwistedGroupAlgebra:
    def __init__(self, sigma: Cocycle):
        self.sigma = sigma
        self.group = sigma.group
        self.n = sigma.n

    def __eq__(self, other):
        return isinstance(other, TwistedGroupAlgebra) and self.sigma == other.sigma

    def __hash__(self):
        return hash((self.group, self.n))

    def __repr__(self):
        return f"TwistedGroupAlgebra({self.group.name}, n={self.n})"

    def mul(self, a: Monomial, b: Monomial) -> Monomial:
        return mono_mul(a, b, self.sigma)

    def unit_monomial(self) -> Monomial:
        """zeta^(-sigma(1,1)) X_1, the identity of F^sigma T."""
        return Monomial(-int(self.sigma.exps[0, 0]) % self.n, 0)

    def homogeneous_inverse(self, m: Monomial) -> Monomial:
        return homogeneous_inverse(m, self.sigma)

    def basis(self, u: int) -> AlgebraElement:
        return self.element({u: 1})

    def monomial(self, m: Monomial) -> AlgebraElement:
        return AlgebraElement(self, {m.u: root_power(m.e, self.n)})

    def element(self, terms) -> AlgebraElement:
        return AlgebraElement(self, terms)

    def unit(self) -> AlgebraElement:
        return self.monomial(self.unit_monomial())

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self)


def homogeneous_inverse(m: Monomial, sigma: Cocycle) -> Monomial:
    """m' with m m' = m' m = 1."""
    G = sigma.group
    ui = G.inverse[m.u]
    e = (-int(sigma.exps[0, 0]) - m.e - int(sigma.exps[m.u, ui])) % sigma.n
    return Monomial(e, ui)
