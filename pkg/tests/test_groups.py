from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gda.errors import FormatError
from gda.groups import (
    AUTOMORPHISM,
    ANTIAUTOMORPHISM,
    NEITHER,
    build_group,
    check_antiautomorphism,
    compose,
    conjugation_map,
    format_group,
    identity_map,
    inversion_map,
    load_group,
    parse_group,
    power_map,
    validate_table,
)

SPECS = [
    "cyclic:1",
    "cyclic:5",
    "elab:2^3",
    "elab:3^2",
    "dihedral:3",
    "dihedral:4",
    "dicyclic:2",
    "symmetric:3",
    "product:cyclic:2,cyclic:4",
    "product:(product:cyclic:2,cyclic:2),cyclic:3",
]


@pytest.mark.parametrize("spec", SPECS)
def test_constructors_are_groups(spec):
    G = build_group(spec)
    validate_table(G.table)
    assert all(G.mul(u, G.inv(u)) == 0 for u in range(G.order))


@pytest.mark.parametrize(
    "spec,order,comm,abelian",
    [
        ("cyclic:1", 1, 1, True),
        ("symmetric:3", 6, 3, False),
        ("dihedral:4", 8, 2, False),
        ("dicyclic:2", 8, 2, False),
        ("elab:2^2", 4, 1, True),
        ("symmetric:4", 24, 12, False),
    ],
)
def test_invariants(spec, order, comm, abelian):
    G = build_group(spec)
    assert (G.order, len(G.commutator_subgroup), G.is_abelian) == (order, comm, abelian)


def test_cyclic_is_powers_of_generator():
    G = build_group("cyclic:4")
    assert G.table[1] == (1, 2, 3, 0)
    assert G.table == build_group("cyclic:4").table


def test_symmetric_lexicographic():
    G = build_group("symmetric:3")
    # element 1 is the transposition (1 2) fixing the first point in one-line notation 0 2 1
    assert G.element_order(1) == 2
    assert sorted(G.element_order(u) for u in range(6)) == [1, 2, 2, 2, 3, 3]


def test_klein_self_inverse():
    G = build_group("product:cyclic:2,cyclic:2")
    assert all(G.inv(u) == u for u in range(4))


def test_q8_single_involution():
    G = build_group("dicyclic:2")
    assert [u for u in range(8) if G.element_order(u) == 2] == [u for u in range(8) if G.inv(u) == u and u != 0]
    assert sum(G.element_order(u) == 4 for u in range(8)) == 6


@pytest.mark.parametrize(
    "table,needle",
    [
        ([[0, 1], [1]], "row 1"),
        ([[0, 1], [1, 2]], "out of range"),
        ([[1, 0], [0, 1]], "identity"),
        ([[0, 1, 2], [1, 1, 2], [2, 0, 1]], "latin"),
    ],
)
def test_validate_names_axiom(table, needle):
    with pytest.raises(FormatError, match=needle):
        validate_table(table)


def test_validate_associativity_witness():
    # a loop of order 5 that is a latin square with identity and two-sided inverses but not associative
    t = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(FormatError, match="associativity fails at triple"):
        validate_table(t)


def test_file_round_trip(tmp_path):
    G = build_group("dihedral:4")
    p = tmp_path / "d4.grp"
    p.write_text("# dihedral of order 8\n" + format_group(G))
    H = load_group(p)
    assert H == G
    assert build_group(f"table:{p}") == G


def test_parse_errors():
    with pytest.raises(FormatError, match="header"):
        parse_group("order 1\n0\n")
    with pytest.raises(FormatError, match="rows"):
        parse_group("group-table v1\norder 2\n0 1\n")
    with pytest.raises(FormatError):
        build_group("tetrahedral:3")
    with pytest.raises(FormatError):
        build_group("cyclic:x")
    with pytest.raises(FormatError):
        load_group("/nonexistent/file.grp")


def test_inversion_is_anti_of_order_two():
    G = build_group("symmetric:3")
    tau = inversion_map(G)
    assert tau.kind == ANTIAUTOMORPHISM and tau.order == 2 and not tau.also_automorphism


def test_identity_map_kind():
    assert identity_map(build_group("cyclic:3")).kind == ANTIAUTOMORPHISM
    assert identity_map(build_group("cyclic:3")).also_automorphism
    assert identity_map(build_group("symmetric:3")).kind == AUTOMORPHISM


def test_cyclic5_inversion_single_fixed_point():
    tau = inversion_map(build_group("cyclic:5"))
    assert tau.order == 2
    assert [u for u in range(5) if tau(u) == u] == [0]


def test_neither():
    G = build_group("cyclic:3")
    m = check_antiautomorphism(G, [1, 0, 2])
    assert m.kind == NEITHER and "multiplicative" in m.reason
    assert check_antiautomorphism(G, [0, 0, 1]).kind == NEITHER


def test_compose_parity():
    G = build_group("symmetric:3")
    tau = inversion_map(G)
    c = conjugation_map(G, 1)
    assert compose(G, tau, tau).kind == AUTOMORPHISM
    assert compose(G, tau, c).kind == ANTIAUTOMORPHISM
    assert compose(G, c, tau).kind == ANTIAUTOMORPHISM
    assert compose(G, c, c).image == tuple(range(6))


def test_power_map_on_abelian():
    G = build_group("cyclic:5")
    assert power_map(G, 2).kind == ANTIAUTOMORPHISM
    assert power_map(G, 4).image == inversion_map(G).image


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_all_inner_automorphisms_are_automorphisms(spec, data):
    G = build_group(spec)
    g = data.draw(st.integers(0, G.order - 1))
    m = conjugation_map(G, g)
    assert m.kind == AUTOMORPHISM or (G.is_abelian and m.also_automorphism)
    for u, v in itertools.product(range(G.order), repeat=2):
        assert m(G.mul(u, v)) == G.mul(m(u), m(v))
