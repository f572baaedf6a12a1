from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gda.codim import (
    MultisetClass,
    ReachableProducts,
    codim_table,
    fmt_decimal,
    graded_codim,
    graded_inv_codim,
    iroot,
    make_record,
    multisets,
    reachable_products,
    records_to_csv,
    root_bracket,
    validate_records,
)
from gda.config import LIMITS
from gda.errors import PreconditionError, TauShapeError
from gda.groups import build_group, identity_map, inversion_map

# frozen reference values (graded / graded-involution with inversion) for S3, m = 1..8
S3_GRADED = [6, 54, 462, 3336, 21816, 135990, 829506, 5012172]
S3_INV = [8, 66, 508, 3488, 22290, 137434, 833864, 5025276]


def brute_reachable(G, seq, tau=None):
    out = set()
    for perm in itertools.permutations(seq):
        choices = [(u,) if tau is None else (u, tau(u)) for u in perm]
        for pick in itertools.product(*choices):
            out.add(G.prod(pick))
    return out


def brute_codim(G, m, tau=None):
    return sum(len(brute_reachable(G, s, tau)) for s in itertools.product(range(G.order), repeat=m))


def test_s3_reference_values(s3):
    tau = inversion_map(s3)
    assert [graded_codim(s3, m) for m in range(1, 9)] == S3_GRADED
    assert [graded_inv_codim(s3, tau, m) for m in range(1, 9)] == S3_INV


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_s3_matches_brute_force(s3, m):
    tau = inversion_map(s3)
    assert graded_codim(s3, m) == brute_codim(s3, m)
    assert graded_inv_codim(s3, tau, m) == brute_codim(s3, m, tau)


@pytest.mark.parametrize("spec", ["dihedral:4", "dicyclic:2", "product:symmetric:3,cyclic:2"])
def test_other_groups_brute(spec):
    G = build_group(spec)
    tau = inversion_map(G)
    for m in (1, 2, 3):
        assert graded_codim(G, m) == brute_codim(G, m)
        assert graded_inv_codim(G, tau, m) == brute_codim(G, m, tau)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["symmetric:3", "dihedral:4", "dicyclic:2"]), st.data())
def test_reachable_matches_brute(spec, data):
    G = build_group(spec)
    seq = data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=5))
    tau = data.draw(st.sampled_from([None, inversion_map(G)]))
    assert set(reachable_products(G, seq, tau)) == brute_reachable(G, seq, tau)


def test_coset_bound(s3):
    for counts in multisets(6, 4):
        assert len(reachable_products(s3, MultisetClass(counts))) <= 3


def test_involution_sets_can_exceed_commutator():
    G = build_group("cyclic:3")
    # u and u^-1 both reachable from a single factor
    assert len(reachable_products(G, [1], inversion_map(G))) == 2


def test_abelian_identity_map_is_exact():
    G = build_group("product:cyclic:2,cyclic:2")
    for m in range(1, 9):
        assert graded_codim(G, m) == 4**m
        assert graded_inv_codim(G, identity_map(G), m) == 4**m


def test_multiset_helpers():
    ms = list(multisets(3, 2))
    assert len(ms) == 6 and ms[0] == (2, 0, 0)
    assert MultisetClass((2, 1, 0)).weight == 3
    assert sum(MultisetClass(c).weight for c in multisets(4, 5)) == 4**5


def test_dp_memo_is_shared(s3):
    dp = ReachableProducts(s3)
    graded_codim(s3, 4, dp)
    size = len(dp.memo)
    graded_codim(s3, 3, dp)
    assert len(dp.memo) == size


def test_preconditions(s3):
    with pytest.raises(PreconditionError):
        graded_codim(s3, 0)
    with pytest.raises(TauShapeError):
        graded_inv_codim(s3, identity_map(s3), 2)
    old = LIMITS.work_budget
    LIMITS.work_budget = 10
    try:
        with pytest.raises(PreconditionError, match="work budget"):
            graded_codim(s3, 3)
    finally:
        LIMITS.work_budget = old


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**30), st.integers(1, 12))
def test_iroot(x, m):
    r = iroot(x, m)
    assert r**m <= x < (r + 1) ** m


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10**12), st.integers(1, 10))
def test_root_bracket(c, m):
    lo, hi = root_bracket(c, m)
    assert lo**m <= c <= hi**m
    assert hi - lo <= Fraction(1, 10**4)


def test_root_bracket_exact():
    assert root_bracket(4**8, 8) == (4, 4)
    assert fmt_decimal(Fraction(4)) == "4.0000"
    assert fmt_decimal(root_bracket(66, 2)[0]) == "8.1240"


def test_record_flags_violations(s3):
    rec = make_record(s3, 2, 30, 400)
    assert "lower" in rec.violations
    assert "sandwich_upper" in rec.violations
    assert rec.status.startswith("violation:")


def test_table_and_csv(s3, s3_iota):
    recs = codim_table(s3, inversion_map(s3), 4)
    validate_records(recs, s3_iota, max_m=3)
    assert [r.status for r in recs] == ["ok-validated"] * 3 + ["ok-formula-only"]
    text = records_to_csv(recs)
    lines = text.splitlines()
    assert lines[0].startswith("m,c_graded,c_involution")
    assert lines[1] == "1,6,8,6,18,108,8.0000,8.0000,ok-validated"
    assert lines[2].startswith("2,54,66,")


def test_graded_only_table(klein):
    recs = codim_table(klein, None, 3)
    assert [r.status for r in recs] == ["ok"] * 3
    assert records_to_csv(recs).splitlines()[1] == "1,4,,4,4,16,4.0000,4.0000,ok"
