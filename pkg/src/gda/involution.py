"""Homogeneous involutions iota(X_u) = mu(u) X_tau(u) on F^sigma T.

(sigma, tau) is compatible when some mu satisfies

    sigma(u, v) = delta(mu)(u, v) * sigma(tau v, tau u)   and   mu(u tau(u)) = 1,

and exactly then iota is an involution.  Both conditions are linear in the
exponents of mu, so compatibility is decided by one congruence system.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .algebra import AlgebraElement, Monomial, TwistedGroupAlgebra
from .cohomology import Cocycle, MuMap, act, coboundary_rows, default_max_lift, unify
from .config import worker_count
from .cyclo import root_power
from .errors import CompatibilityError, FormatError, PreconditionError, TauShapeError
from .groups import GroupMap, GroupTable, check_antiautomorphism
from .snf import CongruenceSolution, SNFSolver


def check_tau(tau: GroupMap) -> None:
    if not tau.is_anti:
        raise TauShapeError(f"tau is not an antiautomorphism ({tau.kind}{': ' + tau.reason if tau.reason else ''})")
    if tau.order not in (1, 2):
        raise TauShapeError(f"tau has order {tau.order}, expected 1 or 2")


@lru_cache(maxsize=64)
def _compat_solver(group: GroupTable, tau_image: tuple[int, ...]) -> SNFSolver:
    k = group.order
    rows = coboundary_rows(group)
    for u in range(k):
        row = [0] * k
        row[group.table[u][tau_image[u]]] = 1
        rows.append(row)
    return SNFSolver(rows)


def _compat_rhs(sigma: Cocycle, tau: GroupMap, scale: int) -> list[int]:
    diff = (sigma.exps - act(tau, sigma).exps) * scale
    return diff.ravel().tolist() + [0] * sigma.group.order


def compatibility_solutions(sigma: Cocycle, tau: GroupMap, order: int | None = None) -> CongruenceSolution | None:
    """The full solution set of the compatibility system at root order ``order``
    (default sigma.n; must be a multiple of it)."""
    check_tau(tau)
    N = sigma.n if order is None else order
    if N % sigma.n:
        raise PreconditionError(f"order {N} is not a multiple of {sigma.n}")
    return _compat_solver(sigma.group, tau.image).solve(_compat_rhs(sigma, tau, N // sigma.n), N)


def solve_compatibility(sigma: Cocycle, tau: GroupMap, max_lift: int | None = None) -> MuMap | None:
    """A witness mu for compatibility, trying root orders n, 2n, ..., max_lift*n.

    Raises TauShapeError when tau is not an antiautomorphism of order 1 or 2;
    returns None when the system has no solution up to the lift bound.
    """
    check_tau(tau)
    if max_lift is None:
        max_lift = default_max_lift(sigma.group)
    for j in range(1, max_lift + 1):
        sol = compatibility_solutions(sigma, tau, sigma.n * j)
        if sol is not None:
            return MuMap(sigma.group, sigma.n * j, sol.particular)
    return None


def iter_compatible_mus(sigma: Cocycle, tau: GroupMap, order: int | None = None):
    sol = compatibility_solutions(sigma, tau, order)
    if sol is None:
        return
    for x in sol:
        yield MuMap(sigma.group, sol.modulus, x)


def exhaustive_mu_search(sigma: Cocycle, tau: GroupMap, cap: int = 1 << 22) -> np.ndarray:
    """Every mu at root order sigma.n satisfying both compatibility conditions, by brute force.

    Rows of the result are exponent vectors, in lexicographic order.  The n^k
    candidates are split into chunks checked in parallel.
    """
    G, n = sigma.group, sigma.n
    k = G.order
    total = n**k
    if total > cap:
        raise PreconditionError(f"{total} candidates exceed the search cap {cap}")
    t = G.array
    img = np.array(tau.image)
    target = (sigma.exps - sigma.exps[np.ix_(img, img)].T) % n
    fixed = t[np.arange(k), img]  # u tau(u)
    weights = n ** np.arange(k - 1, -1, -1, dtype=np.int64)

    def chunk(lo: int, hi: int) -> np.ndarray:
        idx = np.arange(lo, hi, dtype=np.int64)
        mu = (idx[:, None] // weights[None, :]) % n
        ok = (mu[:, fixed] % n == 0).all(axis=1)
        mu = mu[ok]
        d = (mu[:, :, None] + mu[:, None, :] - mu[:, t]) % n
        ok = (d == target[None]).all(axis=(1, 2))
        return mu[ok]

    size = max(1, min(total, 1 << 15))
    bounds = [(lo, min(lo + size, total)) for lo in range(0, total, size)]
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        parts = list(pool.map(lambda b: chunk(*b), bounds))
    return np.concatenate(parts) if parts else np.zeros((0, k), dtype=np.int64)


# ---------------------------------------------------------------- involutions


@dataclass(frozen=True)
class Involution:
    sigma: Cocycle
    tau: GroupMap
    mu: MuMap
    algebra: TwistedGroupAlgebra = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "algebra", TwistedGroupAlgebra(self.sigma))

    @property
    def group(self) -> GroupTable:
        return self.sigma.group

    @property
    def n(self) -> int:
        return self.sigma.n

    def __call__(self, x):
        if isinstance(x, Monomial):
            return apply_monomial(self, x)
        return apply(self, x)


def build_involution(sigma: Cocycle, tau: GroupMap, mu: MuMap) -> Involution:
    """Validate (sigma, tau, mu) and return the involution; both are brought to a common root order."""
    check_tau(tau)
    if mu.group != sigma.group:
        raise PreconditionError("mu and sigma live on different groups")
    sigma, mu = unify(sigma, mu)
    G, n = sigma.group, sigma.n
    E, m = sigma.exps, mu.exps
    rhs = (m[:, None] + m[None, :] - m[G.array] + act(tau, sigma).exps) % n
    bad = np.argwhere(rhs != E)
    if len(bad):
        u, v = (int(x) for x in bad[0])
        raise CompatibilityError(f"sigma != delta(mu) * tau.sigma at (u,v)=({u},{v})")
    for u in range(G.order):
        if m[G.table[u][tau.image[u]]] % n:
            raise CompatibilityError(f"mu(u tau(u)) != 1 at u={u}")
    return Involution(sigma, tau, mu)


def apply_monomial(iota: Involution, x: Monomial) -> Monomial:
    return Monomial((x.e + int(iota.mu.exps[x.u])) % iota.n, iota.tau.image[x.u])


def apply(iota: Involution, x: AlgebraElement) -> AlgebraElement:
    if x.algebra != iota.algebra:
        raise PreconditionError("element is not in the algebra of this involution")
    terms = {}
    for u, c in x.terms.items():
        terms[iota.tau.image[u]] = c * root_power(int(iota.mu.exps[u]), iota.n)
    return AlgebraElement(iota.algebra, terms)


@dataclass
class InvolutionReport:
    ok: bool
    antimultiplicative: tuple[int, int] | None = None
    involutive: int | None = None
    homogeneous: int | None = None

    def __bool__(self):
        return self.ok

    def lines(self) -> list[str]:
        def fmt(name, w):
            return f"{name},{'ok' if w is None else 'fail'},{'' if w is None else w}"

        return [
            "check,status,witness",
            fmt("antimultiplicative", None if self.antimultiplicative is None else "%d %d" % self.antimultiplicative),
            fmt("involutive", self.involutive),
            fmt("homogeneous", self.homogeneous),
        ]


def verify_involution(iota: Involution) -> InvolutionReport:
    """Brute-force check of iota(X_u X_v) = iota(X_v) iota(X_u), iota^2 = id and deg iota(X_u) = tau(u)."""
    A = iota.algebra
    k = iota.group.order
    anti = inv = hom = None
    for u in range(k):
        xu = Monomial(0, u)
        for v in range(k):
            xv = Monomial(0, v)
            lhs = apply_monomial(iota, A.mul(xu, xv))
            rhs = A.mul(apply_monomial(iota, xv), apply_monomial(iota, xu))
            if lhs != rhs:
                anti = (u, v)
                break
        if anti is not None:
            break
    for u in range(k):
        if apply_monomial(iota, apply_monomial(iota, Monomial(0, u))) != Monomial(0, u):
            inv = u
            break
    for u in range(k):
        if set(apply(iota, A.basis(u)).terms) != {iota.tau.image[u]}:
            hom = u
            break
    return InvolutionReport(anti is None and inv is None and hom is None, anti, inv, hom)


# ---------------------------------------------------------------- file format


def format_involution(iota: Involution) -> str:
    return "\n".join(
        [
            "involution v1",
            f"root {iota.n}",
            " ".join(str(x) for x in iota.tau.image),
            " ".join(str(int(x)) for x in iota.mu.exps),
        ]
    ) + "\n"


def parse_involution(text: str, sigma: Cocycle) -> Involution:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) != 4 or lines[0] != "involution v1" or not lines[1].startswith("root "):
        raise FormatError("expected 'involution v1', 'root <n>', tau line, mu line")
    try:
        n = int(lines[1].split()[1])
        tau_img = [int(x) for x in lines[2].split()]
        mu = [int(x) for x in lines[3].split()]
    except (ValueError, IndexError) as exc:
        raise FormatError(f"bad involution file: {exc}") from None
    G = sigma.group
    if len(tau_img) != G.order or len(mu) != G.order or n < 1:
        raise FormatError(f"tau and mu must have {G.order} entries")
    tau = check_antiautomorphism(G, tau_img)
    return build_involution(sigma, tau, MuMap(G, n, mu))


def load_involution(path, sigma: Cocycle) -> Involution:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return parse_involution(text, sigma)


def trivial_involution(group: GroupTable, tau: GroupMap) -> Involution:
    """The involution X_u -> X_tau(u) on the group algebra."""
    return build_involution(Cocycle.trivial(group), tau, MuMap(group, 1, np.zeros(group.order, dtype=np.int64)))

