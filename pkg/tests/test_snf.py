from __future__ import annotations

import itertools

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gda.snf import SNFSolver, smith_normal_form, solve_mod

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def det(M):
    return int(sympy.Matrix(M).det())


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_decomposition(A):
    D, U, V = smith_normal_form(A)
    assert (np.array(U, dtype=object) @ np.array(A, dtype=object) @ np.array(V, dtype=object)).tolist() == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(A), len(A[0])))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(D[i][j] == 0 for i in range(len(A)) for j in range(len(A[0])) if i != j)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_snf_invariants_match_sympy(A):
    D, _, _ = smith_normal_form(A)
    ours = sorted(abs(D[i][i]) for i in range(min(len(A), len(A[0]))))
    theirs = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    ref = sorted(abs(int(theirs[i, i])) for i in range(min(len(A), len(A[0]))))
    assert ours == ref


@settings(max_examples=100, deadline=None)
@given(matrices, st.integers(2, 6), st.data())
def test_solution_set_is_complete(A, N, data):
    """Every x in (Z/N)^n solving A x = b appears exactly once in the solution set."""
    n = len(A[0])
    x0 = data.draw(st.lists(st.integers(0, N - 1), min_size=n, max_size=n))
    b = [(sum(a * x for a, x in zip(row, x0))) % N for row in A]
    sol = solve_mod(A, b, N)
    assert sol is not None
    got = sorted(tuple(x) for x in sol)
    brute = sorted(
        x
        for x in itertools.product(range(N), repeat=n)
        if all(sum(a * y for a, y in zip(row, x)) % N == bb for row, bb in zip(A, b))
    )
    assert got == brute
    assert sol.count() == len(brute)


def test_unsolvable():
    assert solve_mod([[2]], [1], 4) is None
    assert solve_mod([[0]], [1], 3) is None
    sol = solve_mod([[2]], [2], 4)
    assert sorted(tuple(x) for x in sol) == [(1,), (3,)]


def test_solver_reuse():
    s = SNFSolver([[1, 1], [1, -1]])
    assert s.rank == 2
    assert s.solve([0, 1], 2) is None
    assert s.solve([1, 1], 2).count() == 2
