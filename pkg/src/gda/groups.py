"""Finite groups as explicit multiplication tables.

Elements are the dense indices ``0..k-1`` and element 0 is always the identity.
Constructor orderings:

* ``cyclic:n``        -- index i is g^i.
* ``elab:p^k``        -- index is the little-endian base-p digit vector.
* ``dihedral:n``      -- order 2n, index ``i + n*j`` is r^i s^j.
* ``dicyclic:n``      -- order 4n, index ``i + 2n*j`` is a^i x^j with x^2 = a^n
                         (``dicyclic:2`` is the quaternion group).
* ``symmetric:n``     -- permutations of ``0..n-1`` in lexicographic one-line
                         order; ``uv`` is the composition "v first, then u".
* ``product:A,B,...`` -- direct product, index of (a, b) is ``a*|B| + b``.
                         Nest with parentheses: ``product:(product:A,B),C``.
* ``table:<path>``    -- a ``group-table v1`` file.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .config import LIMITS
from .errors import FormatError, PreconditionError

AUTOMORPHISM = "automorphism"
ANTIAUTOMORPHISM = "antiautomorphism"
NEITHER = "neither"


@dataclass(frozen=True, eq=False)
class GroupTable:
    table: tuple[tuple[int, ...], ...]
    name: str = "group"
    inverse: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        k = len(self.table)
        inv = [0] * k
        for u in range(k):
            row = self.table[u]
            for v in range(k):
                if row[v] == 0:
                    inv[u] = v
                    break
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        return isinstance(other, GroupTable) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"GroupTable({self.name!r}, order={self.order})"

    def mul(self, u: int, v: int) -> int:
        return self.table[u][v]

    def prod(self, elems) -> int:
        out = 0
        for u in elems:
            out = self.table[out][u]
        return out

    def inv(self, u: int) -> int:
        return self.inverse[u]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.array == self.array.T).all())

    def element_order(self, u: int) -> int:
        p, x = 1, u
        while x != 0:
            x = self.table[x][u]
            p += 1
        return p

    @cached_property
    def commutator_subgroup(self) -> frozenset[int]:
        return commutator_subgroup(self)

    def validate(self) -> None:
        """Raise FormatError naming the first violated group axiom."""
        validate_table(self.table)


def validate_table(table) -> None:
    k = len(table)
    if k == 0:
        raise FormatError("empty table")
    for u, row in enumerate(table):
        if len(row) != k:
            raise FormatError(f"row {u} has length {len(row)}, expected {k}")
        for v, x in enumerate(row):
            if not (0 <= x < k):
                raise FormatError(f"entry ({u},{v}) = {x} out of range")
    for u in range(k):
        if table[0][u] != u or table[u][0] != u:
            raise FormatError(f"identity: element 0 is not a two-sided identity at u={u}")
    full = set(range(k))
    for u in range(k):
        if set(table[u]) != full:
            raise FormatError(f"latin square: row {u} is not a permutation")
        if {table[v][u] for v in range(k)} != full:
            raise FormatError(f"latin square: column {u} is not a permutation")
    for u in range(k):
        v = table[u].index(0)
        if table[v][u] != 0:
            raise FormatError(f"inverse: element {u} has right inverse {v} that is not a left inverse")
    a = np.array(table, dtype=np.int64)
    # (uv)w vs u(vw) over all triples
    left = a[a]  # left[u, v, w] = table[table[u][v]][w]
    right = a[:, a]  # right[u, v, w] = table[u][table[v][w]]
    bad = np.argwhere(left != right)
    if len(bad):
        u, v, w = (int(x) for x in bad[0])
        raise FormatError(f"associativity fails at triple ({u},{v},{w})")


def commutator_subgroup(G: GroupTable) -> frozenset[int]:
    t, inv = G.table, G.inverse
    gens = {t[t[inv[u]][inv[v]]][t[u][v]] for u in range(G.order) for v in range(G.order)}
    return frozenset(closure(G, gens))


def closure(G: GroupTable, gens) -> set[int]:
    """Subgroup generated by ``gens`` (finite group, so products suffice)."""
    out = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.table[x][g]
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


# ---------------------------------------------------------------- maps


@dataclass(frozen=True)
class GroupMap:
    image: tuple[int, ...]
    kind: str
    order: int | None = None
    also_automorphism: bool = False
    reason: str = ""

    def __call__(self, u: int) -> int:
        return self.image[u]

    @property
    def is_anti(self) -> bool:
        return self.kind == ANTIAUTOMORPHISM


def _map_order(image) -> int:
    k = len(image)
    ident = tuple(range(k))
    cur, p = tuple(image), 1
    while cur != ident:
        cur = tuple(image[x] for x in cur)
        p += 1
    return p


def check_antiautomorphism(G: GroupTable, image) -> GroupMap:
    """Classify ``image`` as an automorphism, antiautomorphism or neither.

    A map that is both (only possible on abelian groups) is reported as an
    antiautomorphism with ``also_automorphism`` set.
    """
    image = tuple(int(x) for x in image)
    k = G.order
    if len(image) != k or any(not 0 <= x < k for x in image):
        return GroupMap(image, NEITHER, None, reason=f"image must have {k} entries in 0..{k - 1}")
    if len(set(image)) != k:
        return GroupMap(image, NEITHER, None, reason="not a bijection")
    a = G.array
    img = np.array(image)
    lhs = img[a]  # image[uv]
    anti = bool((lhs == a[np.ix_(img, img)].T).all())  # image[v]*image[u]
    auto = bool((lhs == a[np.ix_(img, img)]).all())
    order = _map_order(image)
    if anti:
        return GroupMap(image, ANTIAUTOMORPHISM, order, also_automorphism=auto)
    if auto:
        return GroupMap(image, AUTOMORPHISM, order)
    bad = np.argwhere(lhs != a[np.ix_(img, img)].T)[0]
    return GroupMap(image, NEITHER, order, reason=f"not multiplicative at ({bad[0]},{bad[1]})")


def as_automorphism(m: GroupMap) -> GroupMap:
    """Re-flag a map that is both auto- and antiautomorphism as an automorphism."""
    if m.kind == AUTOMORPHISM:
        return m
    if not m.also_automorphism:
        raise PreconditionError("map is not an automorphism")
    return GroupMap(m.image, AUTOMORPHISM, m.order)


def inversion_map(G: GroupTable) -> GroupMap:
    return check_antiautomorphism(G, G.inverse)


def identity_map(G: GroupTable) -> GroupMap:
    """The identity, flagged antiautomorphism on abelian groups."""
    return check_antiautomorphism(G, range(G.order))


def conjugation_map(G: GroupTable, g: int) -> GroupMap:
    t, gi = G.table, G.inverse[g]
    return check_antiautomorphism(G, [t[t[g][u]][gi] for u in range(G.order)])


def power_map(G: GroupTable, a: int) -> GroupMap:
    """u -> u^a; an automorphism of an abelian group when a is prime to its exponent."""
    img = []
    for u in range(G.order):
        x = 0
        for _ in range(a % max(1, G.order)):
            x = G.table[x][u]
        img.append(x)
    return check_antiautomorphism(G, img)


def compose(G: GroupTable, a: GroupMap, b: GroupMap) -> GroupMap:
    """``a o b`` (apply b, then a); the kind flag follows the parity of anti factors."""
    out = check_antiautomorphism(G, [a.image[x] for x in b.image])
    if a.is_anti != b.is_anti:
        return out
    if out.kind == AUTOMORPHISM:
        return out
    return as_automorphism(out)


# ---------------------------------------------------------------- constructors


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise FormatError("cyclic order must be positive")
    return GroupTable(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), f"cyclic:{n}")


def elementary_abelian(p: int, k: int) -> GroupTable:
    if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise FormatError(f"elab needs a prime, got {p}")
    size = p**k
    _check_size(size)

    def digits(x):
        return [(x // p**i) % p for i in range(k)]

    def number(ds):
        return sum(d * p**i for i, d in enumerate(ds))

    table = tuple(
        tuple(number([(a + b) % p for a, b in zip(digits(x), digits(y))]) for y in range(size))
        for x in range(size)
    )
    return GroupTable(table, f"elab:{p}^{k}")


def dihedral(n: int) -> GroupTable:
    if n < 1:
        raise FormatError("dihedral parameter must be positive")
    _check_size(2 * n)

    def mul(x, y):
        i, a = x % n, x // n
        j, b = y % n, y // n
        return (i + (j if a == 0 else -j)) % n + n * ((a + b) % 2)

    return GroupTable(tuple(tuple(mul(x, y) for y in range(2 * n)) for x in range(2 * n)), f"dihedral:{n}")


def dicyclic(n: int) -> GroupTable:
    if n < 1:
        raise FormatError("dicyclic parameter must be positive")
    m = 2 * n
    _check_size(2 * m)

    def mul(x, y):
        i, a = x % m, x // m
        j, b = y % m, y // m
        if a == 0:
            return (i + j) % m + m * b
        if b == 0:
            return (i - j) % m + m
        return (i - j + n) % m

    return GroupTable(tuple(tuple(mul(x, y) for y in range(2 * m)) for x in range(2 * m)), f"dicyclic:{n}")


def symmetric(n: int) -> GroupTable:
    if not 1 <= n <= LIMITS.max_symmetric_degree:
        raise PreconditionError(f"symmetric:n needs 1 <= n <= {LIMITS.max_symmetric_degree}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(p[q[x]] for x in range(n))] for q in perms) for p in perms)
    return GroupTable(table, f"symmetric:{n}")


def direct_product(*groups: GroupTable) -> GroupTable:
    G = groups[0]
    for H in groups[1:]:
        kh = H.order
        _check_size(G.order * kh)
        size = G.order * kh
        table = tuple(
            tuple(G.table[x // kh][y // kh] * kh + H.table[x % kh][y % kh] for y in range(size))
            for x in range(size)
        )
        G = GroupTable(table, f"product:{G.name},{H.name}")
    return G


def _check_size(k: int) -> None:
    if k > LIMITS.max_group_order:
        raise PreconditionError(f"group order {k} exceeds cap {LIMITS.max_group_order}")


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _int(s: str, what: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise FormatError(f"bad {what}: {s!r}") from None


def build_group(spec: str) -> GroupTable:
    """Build a validated group from a constructor string (see module docstring)."""
    spec = spec.strip()
    while spec.startswith("(") and spec.endswith(")"):
        spec = spec[1:-1].strip()
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise FormatError(f"malformed group spec {spec!r}")
    if kind == "cyclic":
        n = _int(arg, "cyclic order")
        _check_size(n)
        G = cyclic(n)
    elif kind == "elab":
        p, caret, e = arg.partition("^")
        G = elementary_abelian(_int(p, "prime"), _int(e, "rank") if caret else 1)
    elif kind == "dihedral":
        G = dihedral(_int(arg, "dihedral parameter"))
    elif kind == "dicyclic":
        G = dicyclic(_int(arg, "dicyclic parameter"))
    elif kind == "symmetric":
        G = symmetric(_int(arg, "symmetric degree"))
    elif kind == "product":
        parts = _split_top(arg)
        if len(parts) < 2 or not all(parts):
            raise FormatError(f"product needs at least two factors: {spec!r}")
        G = direct_product(*(build_group(p) for p in parts))
        G = GroupTable(G.table, spec)
    elif kind == "table":
        return load_group(arg)
    else:
        raise FormatError(f"unknown group constructor {kind!r}")
    G.validate()
    return G


# ---------------------------------------------------------------- file format


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def format_group(G: GroupTable) -> str:
    lines = ["group-table v1", f"order {G.order}"]
    lines += [" ".join(str(x) for x in row) for row in G.table]
    return "\n".join(lines) + "\n"


def parse_group(text: str, name: str = "table") -> GroupTable:
    lines = _content_lines(text)
    if not lines or lines[0] != "group-table v1":
        raise FormatError("expected header 'group-table v1'")
    if len(lines) < 2 or not lines[1].startswith("order "):
        raise FormatError("expected 'order <k>' on line 2")
    k = _int(lines[1].split()[1], "order")
    if k < 1:
        raise FormatError("order must be positive")
    _check_size(k)
    rows = lines[2:]
    if len(rows) != k:
        raise FormatError(f"expected {k} table rows, found {len(rows)}")
    table = tuple(tuple(_int(x, "table entry") for x in row.split()) for row in rows)
    validate_table(table)
    return GroupTable(table, name)


def load_group(path) -> GroupTable:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return parse_group(text, name=f"table:{path}")
