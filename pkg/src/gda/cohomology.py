"""2-cocycles with root-of-unity values, coboundaries and the (anti)automorphism action.

A cocycle sigma with values zeta_n^e is stored additively as its k x k exponent
table mod n, so the multiplicative cocycle identity becomes

    e[u][v] + e[uv][w] = e[u][vw] + e[v][w]   (mod n).
"""
from __future__ import annotations

import math
import re
from functools import lru_cache
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import FormatError, PreconditionError
from .groups import AUTOMORPHISM, ANTIAUTOMORPHISM, GroupMap, GroupTable, build_group, cyclic, direct_product
from .snf import SNFSolver


class Cocycle:
    def __init__(self, group: GroupTable, n: int, exps):
        exps = np.asarray(exps, dtype=np.int64)
        k = group.order
        if exps.shape != (k, k):
            raise PreconditionError(f"cocycle table has shape {exps.shape}, group order is {k}")
        if n < 1:
            raise PreconditionError("root order must be positive")
        self.group = group
        self.n = int(n)
        self.exps = exps % self.n
        self.exps.setflags(write=False)

    @classmethod
    def trivial(cls, group: GroupTable, n: int = 1) -> Cocycle:
        return cls(group, n, np.zeros((group.order, group.order), dtype=np.int64))

    def __call__(self, u: int, v: int) -> int:
        return int(self.exps[u, v])

    def __eq__(self, other):
        """Equal as functions into F^x, whatever the root orders."""
        if not isinstance(other, Cocycle) or self.group != other.group:
            return False
        a, b = unify(self, other)
        return np.array_equal(a.exps, b.exps)

    def __add__(self, other: Cocycle) -> Cocycle:
        """Pointwise product of cocycles (sum of exponents) at the common order."""
        a, b = unify(self, other)
        return Cocycle(a.group, a.n, a.exps + b.exps)

    def __neg__(self) -> Cocycle:
        return Cocycle(self.group, self.n, -self.exps)

    def __sub__(self, other: Cocycle) -> Cocycle:
        return self + (-other)

    def __repr__(self):
        return f"Cocycle({self.group.name}, n={self.n})"

    def rescale(self, N: int) -> Cocycle:
        if N % self.n:
            raise PreconditionError(f"{self.n} does not divide {N}")
        return Cocycle(self.group, N, self.exps * (N // self.n))

    def is_zero(self) -> bool:
        return not self.exps.any()


class MuMap:
    """A map T -> F^x with values zeta_n^exps[u]."""

    def __init__(self, group: GroupTable, n: int, exps):
        exps = np.asarray(exps, dtype=np.int64)
        if exps.shape != (group.order,):
            raise PreconditionError(f"mu has {exps.shape[0] if exps.ndim else 0} entries, group order is {group.order}")
        self.group = group
        self.n = int(n)
        self.exps = exps % self.n
        self.exps.setflags(write=False)

    def __call__(self, u: int) -> int:
        return int(self.exps[u])

    def __eq__(self, other):
        if not isinstance(other, MuMap) or self.group != other.group:
            return False
        a, b = unify(self, other)
        return np.array_equal(a.exps, b.exps)

    def __repr__(self):
        return f"MuMap(n={self.n}, {self.exps.tolist()})"

    def rescale(self, N: int) -> MuMap:
        if N % self.n:
            raise PreconditionError(f"{self.n} does not divide {N}")
        return MuMap(self.group, N, self.exps * (N // self.n))

    def compose(self, theta: GroupMap) -> MuMap:
        """mu o theta."""
        return MuMap(self.group, self.n, self.exps[list(theta.image)])


def unify(*objs):
    """Rescale cocycles / mu maps to the lcm of their root orders."""
    N = math.lcm(*(o.n for o in objs))
    return [o.rescale(N) for o in objs]


class CocycleCheck(NamedTuple):
    ok: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.ok


def cocycle_defect(group: GroupTable, exps, n: int) -> np.ndarray:
    """k x k x k array of e[u][v] + e[uv][w] - e[u][vw] - e[v][w] mod n."""
    e = np.asarray(exps, dtype=np.int64)
    t = group.array
    k = group.order
    idx = np.arange(k)
    lhs = e[:, :, None] + e[t][:, :, :]
    rhs = e[idx[:, None, None], t[None, :, :]] + e[None, :, :]
    return (lhs - rhs) % n


def is_cocycle(sigma: Cocycle) -> CocycleCheck:
    bad = np.argwhere(cocycle_defect(sigma.group, sigma.exps, sigma.n))
    if len(bad):
        return CocycleCheck(False, tuple(int(x) for x in bad[0]))
    return CocycleCheck(True)


def coboundary(mu: MuMap) -> Cocycle:
    e = mu.exps
    t = mu.group.array
    return Cocycle(mu.group, mu.n, e[:, None] + e[None, :] - e[t])


def act(theta: GroupMap, sigma: Cocycle) -> Cocycle:
    """theta.sigma: sigma(theta u, theta v) for automorphisms, sigma(theta v, theta u) for antiautomorphisms.

    The action is on the right: act(a, act(b, s)) == act(compose(G, b, a), s).
    """
    if theta.kind not in (AUTOMORPHISM, ANTIAUTOMORPHISM):
        raise PreconditionError(f"cannot act by a map of kind {theta.kind!r}: {theta.reason}")
    img = np.array(theta.image)
    e = sigma.exps[np.ix_(img, img)]
    if theta.kind == ANTIAUTOMORPHISM:
        e = e.T
    return Cocycle(sigma.group, sigma.n, e)


def normalize(sigma: Cocycle) -> tuple[Cocycle, MuMap]:
    """Cohomologous cocycle with sigma(1, u) = 1, and the constant mu used for the twist."""
    c = sigma(0, 0)
    mu = MuMap(sigma.group, sigma.n, np.full(sigma.group.order, c))
    return sigma - coboundary(mu), mu


# ---------------------------------------------------------------- linear systems


def coboundary_rows(group: GroupTable) -> list[list[int]]:
    """Integer matrix of mu -> delta(mu): row (u, v) has +1 at u, +1 at v, -1 at uv."""
    k = group.order
    rows = []
    for u in range(k):
        for v in range(k):
            row = [0] * k
            row[u] += 1
            row[v] += 1
            row[group.table[u][v]] -= 1
            rows.append(row)
    return rows


@lru_cache(maxsize=64)
def _coboundary_solver(group: GroupTable) -> SNFSolver:
    return SNFSolver(coboundary_rows(group))


def default_max_lift(group: GroupTable) -> int:
    return 2 * group.order


def cohomologous(sigma: Cocycle, sigma2: Cocycle, max_lift: int | None = None) -> MuMap | None:
    """A mu with delta(mu) + sigma2 = sigma, searching root orders N, 2N, ..., max_lift*N.

    N is the lcm of the two root orders.  Returns None when no order up to the
    lift bound works.
    """
    if sigma.group != sigma2.group:
        raise PreconditionError("cocycles live on different groups")
    if max_lift is None:
        max_lift = default_max_lift(sigma.group)
    a, b = unify(sigma, sigma2)
    solver = _coboundary_solver(sigma.group)
    for j in range(1, max_lift + 1):
        N = a.n * j
        rhs = ((a.exps - b.exps) * j).ravel().tolist()
        sol = solver.solve(rhs, N)
        if sol is not None:
            return MuMap(sigma.group, N, sol.particular)
    return None


# ---------------------------------------------------------------- sampling and examples


@lru_cache(maxsize=32)
def _cocycle_solver(group: GroupTable) -> SNFSolver:
    """SNF of the k^3 x k^2 system whose kernel mod n is Z^2(T, Z/n)."""
    k = group.order
    t = group.table
    rows = []
    seen = set()
    for u in range(k):
        for v in range(k):
            for w in range(k):
                row = [0] * (k * k)
                row[u * k + v] += 1
                row[t[u][v] * k + w] += 1
                row[u * k + t[v][w]] -= 1
                row[v * k + w] -= 1
                key = tuple(row)
                if any(row) and key not in seen:
                    seen.add(key)
                    rows.append(row)
    if not rows:
        rows = [[0] * (k * k)]
    return SNFSolver(rows)


def random_cocycle(group: GroupTable, n: int, rng: np.random.Generator) -> Cocycle:
    """A uniformly random element of Z^2(T, <zeta_n>)."""
    solver = _cocycle_solver(group)
    sol = solver.solve([0] * solver.m, n)
    x = np.array(sol.particular, dtype=object)
    for g, o in zip(sol.generators, sol.orders):
        x = x + int(rng.integers(o)) * np.array(g, dtype=object)
    return Cocycle(group, n, np.array(x % n, dtype=np.int64).reshape(group.order, group.order))


def random_mu(group: GroupTable, n: int, rng: np.random.Generator) -> MuMap:
    return MuMap(group, n, rng.integers(0, n, size=group.order))


def pauli_cocycle(q: int) -> tuple[GroupTable, Cocycle]:
    """Z_q x Z_q with sigma((a1, a2), (b1, b2)) = zeta_q^(a2 b1); F^sigma T is M_q(F)."""
    if q < 2:
        raise PreconditionError("pauli cocycle needs q >= 2")
    G = direct_product(cyclic(q), cyclic(q))
    G = type(G)(G.table, f"product:cyclic:{q},cyclic:{q}")
    e = np.zeros((q * q, q * q), dtype=np.int64)
    for a in range(q * q):
        for b in range(q * q):
            e[a, b] = (a % q) * (b // q)
    return G, Cocycle(G, q, e)


def abelian_invariants(group: GroupTable) -> tuple[list[int], np.ndarray]:
    """Invariant factors d_1 | d_2 | ... of an abelian group and the coordinates of every element.

    ``coords[u, i]`` is the i-th coordinate of u in Z/d_1 x Z/d_2 x ...
    """
    if not group.is_abelian:
        raise PreconditionError("group is not abelian")
    solver = _coboundary_solver(group)
    # relations e_u + e_v - e_uv = 0 present Z^k / L = T; x -> xV is the decomposition
    keep = [i for i, d in enumerate(solver.diag) if d != 1]
    orders = [solver.diag[i] for i in keep]
    V = np.array(solver.V, dtype=object)
    coords = np.array([[int(V[u, i]) % d for i, d in zip(keep, orders)] for u in range(group.order)], dtype=np.int64)
    return orders, coords.reshape(group.order, len(orders))


def abelian_h2_representatives(group: GroupTable) -> list[Cocycle]:
    """One bilinear cocycle per class of H^2(T, F^x) for abelian T.

    Classes correspond to alternating bicharacters; the representative for the
    coefficients c_ij (i < j, c_ij mod gcd(d_i, d_j)) is
    prod zeta_g^(c_ij * a_j * b_i).
    """
    orders, coords = abelian_invariants(group)
    r = len(orders)
    pairs = [(i, j, math.gcd(orders[i], orders[j])) for i in range(r) for j in range(i + 1, r)]
    pairs = [p for p in pairs if p[2] > 1]
    N = math.lcm(1, *(g for _, _, g in pairs))
    out = []
    for cs in np.ndindex(*(g for _, _, g in pairs)):
        e = np.zeros((group.order, group.order), dtype=np.int64)
        for (i, j, g), c in zip(pairs, cs):
            e += (c * (N // g)) * np.outer(coords[:, j], coords[:, i])
        out.append(Cocycle(group, N, e))
    return out


# ---------------------------------------------------------------- file format

_GROUP_HINT = re.compile(r"^#\s*group:\s*(\S+)\s*$")


def format_cocycle(sigma: Cocycle, group_spec: str | None = None) -> str:
    lines = ["cocycle v1"]
    if group_spec:
        lines.append(f"# group: {group_spec}")
    lines.append(f"order {sigma.group.order} root {sigma.n}")
    lines += [" ".join(str(int(x)) for x in row) for row in sigma.exps]
    return "\n".join(lines) + "\n"


def group_hint(text: str) -> str | None:
    """The ``# group: <spec>`` comment of a cocycle file, if present."""
    for ln in text.splitlines():
        m = _GROUP_HINT.match(ln.strip())
        if m:
            return m.group(1)
    return None


def parse_cocycle(text: str, group: GroupTable | None = None) -> Cocycle:
    if group is None:
        hint = group_hint(text)
        if hint is None:
            raise FormatError("cocycle file names no group; pass one explicitly")
        group = build_group(hint)
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or lines[0] != "cocycle v1":
        raise FormatError("expected header 'cocycle v1'")
    head = lines[1].split() if len(lines) > 1 else []
    if len(head) != 4 or head[0] != "order" or head[2] != "root":
        raise FormatError("expected 'order <k> root <n>' on line 2")
    try:
        k, n = int(head[1]), int(head[3])
        rows = [[int(x) for x in ln.split()] for ln in lines[2:]]
    except ValueError as exc:
        raise FormatError(f"non-integer entry: {exc}") from None
    if k != group.order:
        raise FormatError(f"cocycle order {k} does not match group order {group.order}")
    if n < 1:
        raise FormatError("root order must be positive")
    if len(rows) != k or any(len(r) != k for r in rows):
        raise FormatError(f"expected {k} rows of {k} exponents")
    sigma = Cocycle(group, n, rows)
    check = is_cocycle(sigma)
    if not check:
        raise FormatError(f"not a cocycle: identity fails at triple {check.witness}")
    return sigma


def load_cocycle(path, group: GroupTable | None = None) -> Cocycle:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return parse_cocycle(text, group)
