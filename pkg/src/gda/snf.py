"""Smith normal form over the integers and linear congruence systems.

``smith_normal_form(A)`` returns ``(D, U, V)`` with ``U A V = D``, U and V
unimodular, D diagonal with d_1 | d_2 | ... and nonnegative entries.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    A = [[int(x) for x in row] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        rs, rd = A[src], A[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += c * rs[j]
        us, ud = U[src], U[dst]
        for j in range(m):
            if us[j]:
                ud[j] += c * us[j]

    def add_col(dst, src, c):
        for row in A:
            if row[src]:
                row[dst] += c * row[src]
        for row in V:
            if row[src]:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| of the trailing block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if done:
                # divisibility condition against the rest of the block
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # a remainder smaller than the pivot survives: move it into place
            best = None
            for i in range(t, m):
                x = A[i][t]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, t)
            for j in range(t, n):
                x = A[t][j]
                if x and abs(x) < best[0]:
                    best = (abs(x), t, j)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


@dataclass
class CongruenceSolution:
    """All solutions of A x = b (mod N): ``particular + sum c_i * generators[i]``,
    c_i ranging over ``range(orders[i])``; distinct coefficient tuples give distinct x."""

    modulus: int
    particular: list[int]
    generators: list[list[int]]
    orders: list[int]

    def count(self) -> int:
        return math.prod(self.orders)

    def __iter__(self):
        N = self.modulus
        for cs in itertools.product(*(range(o) for o in self.orders)):
            x = list(self.particular)
            for c, g in zip(cs, self.generators):
                if c:
                    x = [(a + c * b) % N for a, b in zip(x, g)]
            yield x


class SNFSolver:
    """Solve A x = b (mod N) for fixed integer A and varying (b, N)."""

    def __init__(self, A):
        self.A = [[int(x) for x in row] for row in A]
        self.m = len(self.A)
        self.n = len(self.A[0]) if self.m else 0
        self.D, self.U, self.V = smith_normal_form(self.A)
        self.diag = [self.D[i][i] for i in range(min(self.m, self.n))]
        self.rank = sum(1 for d in self.diag if d)

    def solve(self, b, N: int) -> CongruenceSolution | None:
        c = [sum(u * x for u, x in zip(row, b)) % N for row in self.U]
        y = [0] * self.n
        gens_y: list[tuple[int, int]] = []  # (coordinate, step)
        orders: list[int] = []
        for i in range(self.rank):
            d = self.diag[i]
            g = math.gcd(d, N)
            if c[i] % g:
                return None
            mod = N // g
            y[i] = (c[i] // g) * pow(d // g, -1, mod) % mod if mod > 1 else 0
            if g > 1:
                gens_y.append((i, mod))
                orders.append(g)
        for i in range(self.rank, self.m):
            if c[i] % N:
                return None
        for i in range(self.rank, self.n):
            gens_y.append((i, 1))
            orders.append(N)
        x = [sum(V_row[j] * y[j] for j in range(self.n)) % N for V_row in self.V]
        gens = [[(row[i] * step) % N for row in self.V] for i, step in gens_y]
        keep = [(g, o) for g, o in zip(gens, orders) if o > 1]
        return CongruenceSolution(N, x, [g for g, _ in keep], [o for _, o in keep])


def solve_mod(A, b, N: int) -> CongruenceSolution | None:
    return SNFSolver(A).solve(b, N)
