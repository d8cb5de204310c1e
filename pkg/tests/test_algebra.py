from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brace_lab.algebra import (FiniteBrace, FiniteRing, adjoint_brace, check_brace_axioms,
                               check_ring_axioms, opposite_brace, relabel_identity_to_zero, socle,
                               star, star_associativity_witness, verify_subbrace)
from brace_lab.catalog import catalog, catalog_braces, t3_ring, trivial_brace, ut_ring, zn_ring
from brace_lab.errors import AxiomError, NotRadical, TableError

from conftest import z4_tables
from oracles import adjoint, is_left_brace, ut_tables

ALL = catalog_braces()
SMALL = catalog_braces(max_size=8)


def test_trivial_z3_is_a_brace():
    add = [[(x + y) % 3 for y in range(3)] for x in range(3)]
    rep = check_brace_axioms(add, add)
    assert rep.ok and rep.brace.is_trivial


def test_z4_adjoint_tables_are_a_brace():
    add, mul = z4_tables(2)
    assert check_brace_axioms(add, mul).ok
    assert is_left_brace(add, mul)


def test_z4_with_xy_fails_on_inverse_of_one():
    add, mul = z4_tables(1)
    rep = check_brace_axioms(add, mul)
    assert not rep.ok
    assert rep.axiom == "multiplicative inverse"
    assert rep.witness == (1,)
    # 1∘y = 1 + 2y is never 0
    assert all(mul[1][y] != 0 for y in range(4))


@pytest.mark.parametrize("add, mul", [
    ([[0, 1], [1, 0]], [[0, 1]]),
    ([[0, 1], [1, 2]], [[0, 1], [1, 0]]),
    ([[0, 1], [1, 0]], [[0.0, 1.0], [1.0, 0.0]]),
    ([[0, 1], [1]], [[0, 1], [1, 0]]),
    ([[0, -1], [1, 0]], [[0, 1], [1, 0]]),
])
def test_malformed_tables_raise_table_error(add, mul):
    with pytest.raises(TableError):
        check_brace_axioms(add, mul)


def test_brace_law_failure_is_reported():
    # (Z_4, +) with ∘ a relabelled copy of Z_4: a group, but not compatible with +
    p = [0, 2, 1, 3]
    add = [[(x + y) % 4 for y in range(4)] for x in range(4)]
    mul = [[p[(p[x] + p[y]) % 4] for y in range(4)] for x in range(4)]
    rep = check_brace_axioms(add, mul)
    assert rep.axiom == "left brace law"
    x, y, z = rep.witness
    lhs = mul[x][add[y][z]]
    assert lhs != (mul[x][y] + mul[x][z] - x) % 4


def test_from_tables_raises_axiom_error():
    add, mul = z4_tables(1)
    with pytest.raises(AxiomError):
        FiniteBrace.from_tables(add, mul)


def test_adjoint_brace_z4_entries():
    b = adjoint_brace(zn_ring(4, 2))
    assert b.circ(1, 1) == 0 and b.circ(1, 2) == 3 and b.circ(2, 3) == 1


def test_adjoint_of_zero_ring_is_trivial():
    assert adjoint_brace(zn_ring(3, 0)).is_trivial


def test_adjoint_of_ut3_matches_matrix_oracle():
    add, mul = ut_tables(3)
    b = adjoint_brace(ut_ring(3))
    assert b.mul.tolist() == adjoint(add, mul)
    assert is_left_brace(add, adjoint(add, mul))


def test_non_radical_ring_is_rejected():
    # Z_3 with the usual product: 2∘y = 2 + y + 2y = 2 for every y
    ring = zn_ring(3, 1)
    with pytest.raises(NotRadical) as exc:
        adjoint_brace(ring)
    assert exc.value.witness is not None


def test_ring_axioms_report():
    ok = check_ring_axioms(*z4_tables(2)[:1], [[(2 * x * y) % 4 for y in range(4)] for x in range(4)])
    assert ok.ok
    bad = check_ring_axioms([[(x + y) % 2 for y in range(2)] for x in range(2)], [[0, 1], [1, 1]])
    assert not bad.ok


def test_nilpotency():
    # 1∗1 = 2 is nonzero, every triple product vanishes
    assert zn_ring(4, 2).nilpotency_index == 3
    assert zn_ring(3, 0).nilpotency_index == 2
    assert ut_ring(3).nilpotency_index == 3
    assert ut_ring(4).nilpotency_index == 4
    assert t3_ring().nilpotency_index == 3
    assert zn_ring(3, 1).nilpotency_index is None


def test_adjoint_inverse_series():
    ring = ut_ring(4)
    for x in range(ring.size):
        assert ring.circ(x, ring.adjoint_inverse(x)) == 0


def test_star_examples(z4):
    assert star(z4, 1, 1) == 2
    t = trivial_brace(3)
    assert all(star(t, x, y) == 0 for x in range(3) for y in range(3))


@pytest.mark.parametrize("name", ["z4ring", "t3ring", "ut3ring", "ut4ring"])
def test_star_recovers_ring_product(name):
    ring = catalog(name).obj
    b = adjoint_brace(ring)
    assert np.array_equal(b.star_table, ring.mul)


def test_star_associativity():
    assert star_associativity_witness(trivial_brace(3)) is None
    assert star_associativity_witness(catalog("z4adj").obj) is None


def test_one_sided_brace_has_star_witness():
    one_sided = [b for b in SMALL if not b.is_two_sided]
    assert one_sided, "the order <= 8 catalog should contain a one-sided brace"
    for b in one_sided:
        w = star_associativity_witness(b)
        assert w is not None
        x, y, z = w
        assert b.star(b.star(x, y), z) != b.star(x, b.star(y, z))
    assert star_associativity_witness(catalog("onesided8").obj) == (1, 1, 1)


def test_socle_examples(z4):
    t = trivial_brace(4)
    assert socle(t, "left") == socle(t, "opposite") == (0, 1, 2, 3)
    assert socle(z4, "left") == socle(z4, "opposite") == (0, 2)
    ut3adj = catalog("ut3adj").obj
    # frozen from a scan of the matrix oracle
    assert socle(ut3adj, "left") == (0, 2, 4, 6)
    assert socle(ut3adj, "opposite") == (0, 1, 4, 5)


@pytest.mark.parametrize("b", ALL, ids=lambda b: b.name)
def test_socles_are_subgroups(b):
    for side in ("left", "opposite"):
        s = socle(b, side)
        assert 0 in s and b.is_additive_subgroup(s)


def test_opposite_examples(z4):
    t = trivial_brace(3)
    assert np.array_equal(opposite_brace(t).mul, t.mul)
    assert np.array_equal(opposite_brace(z4).mul, z4.mul)


@pytest.mark.parametrize("b", [b for b in ALL if not np.array_equal(b.mul, b.mul.T)],
                         ids=lambda b: b.name)
def test_opposite_satisfies_right_law(b):
    op = opposite_brace(b)
    assert op.side == "right"
    add, mul, neg = op.add, op.mul, op.neg
    n = op.size
    x, y, z = np.meshgrid(*(np.arange(n),) * 3, indexing="ij")
    assert np.array_equal(mul[add[x, y], z], add[add[mul[x, z], mul[y, z]], neg[z]])


def test_subbrace_examples(z4):
    assert verify_subbrace(z4, [0])
    assert verify_subbrace(z4, [0, 2])
    assert not verify_subbrace(z4, [0, 1])


@pytest.mark.parametrize("b", ALL, ids=lambda b: b.name)
def test_subtraction_lemma(b):
    n = b.size
    add, mul, neg = b.add, b.mul, b.neg
    x, y, z = np.meshgrid(*(np.arange(n),) * 3, indexing="ij")
    lhs = add[mul[z, add[x, neg[y]]], neg[z]]
    rhs = add[mul[z, x], neg[mul[z, y]]]
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("b", SMALL, ids=lambda b: b.name)
def test_multiple_identities(b):
    for x, y in product(range(b.size), repeat=2):
        xy = b.circ(x, y)
        assert b.plus(xy, b.circ(x, b.negate(y))) == b.multiple(2, x)
        for k in range(1, b.size + 1):
            assert b.circ(x, b.multiple(k, y)) == b.minus(b.multiple(k, xy), b.multiple(k - 1, x))
            assert b.circ(x, b.multiple(-k, y)) == b.minus(b.multiple(k + 1, x), b.multiple(k, xy))


@pytest.mark.parametrize("name", ["zero:3", "z4ring", "t3ring", "ut3ring", "ut4ring"])
def test_adjoint_of_nilpotent_rings_validates(name):
    ring = catalog(name).obj
    assert ring.is_nilpotent
    b = adjoint_brace(ring)
    assert check_brace_axioms(b.add, b.mul).ok


def test_relabel_identity_to_zero():
    # Z_3 written with the identity at index 2
    perm = [2, 0, 1]  # new label of old element
    old = [[None] * 3 for _ in range(3)]
    for a in range(3):
        for c in range(3):
            old[perm.index(a)][perm.index(c)] = perm.index((a + c) % 3)
    add, mul, p = relabel_identity_to_zero(old, old)
    assert add[0].tolist() == [0, 1, 2]
    assert check_brace_axioms(add, mul).ok


def test_tables_are_read_only(z4):
    with pytest.raises(ValueError):
        z4.add[0, 0] = 1


def test_ring_from_functions_validates():
    with pytest.raises(AxiomError):
        FiniteRing.from_functions([0, 1], lambda a, b: (a + b) % 2, lambda a, b: 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([b for b in ALL]), st.data())
def test_sigma_is_additive_property(b, data):
    x = data.draw(st.integers(0, b.size - 1))
    y = data.draw(st.integers(0, b.size - 1))
    z = data.draw(st.integers(0, b.size - 1))
    assert b.sigma(x, b.plus(y, z)) == b.plus(b.sigma(x, y), b.sigma(x, z))
    assert b.sigma(x, 0) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.integers(0, 6))
def test_zn_rings_radical_iff_nilpotent(n, k):
    ring = zn_ring(n, k)
    try:
        adjoint_brace(ring)
        radical = True
    except NotRadical:
        radical = False
    assert radical == ring.is_nilpotent
