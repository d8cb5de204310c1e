import numpy as np
import pytest

from brace_lab.algebra import check_brace_axioms, opposite_brace, socle
from brace_lab.catalog import catalog, ut_ring, ut_span, ut_where, zn_ring
from brace_lab.errors import (AdditiveFactorizationFails, FactorizationError, FNotEquivariant,
                              HypothesisFailed, IntersectionNontrivial, KNotJClose, NotIdeal,
                              NotSubring)
from brace_lab.factorizable import (check_coset_lemma, check_socle_reflection, coset_socle_map,
                                    make_involutive_ring_reflection, make_ring_reflection,
                                    odot_brace, verify_factorization, verify_ideal_J)
from brace_lab.reflection import PointMap, check_reflection, is_involutive_map
from brace_lab.yang_baxter import classify, yb_from_brace

from oracles import is_left_brace, is_reflection, odot_table, ut_tables, yb_map

# x ⊙ y on the 3x3 ring with S = {0, e12}, I = span(e23, e13); frozen from the matrix oracle
UT3_ODOT = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 7, 6, 5, 4, 3, 2],
    [2, 7, 0, 5, 6, 3, 4, 1],
    [3, 6, 5, 0, 7, 2, 1, 4],
    [4, 5, 6, 7, 0, 1, 2, 3],
    [5, 4, 3, 2, 1, 0, 7, 6],
    [6, 3, 4, 1, 2, 7, 0, 5],
    [7, 2, 1, 4, 3, 6, 5, 0],
]
ALL8 = tuple(range(8))


def a(x):
    return x & 1


def b(x):
    return (x >> 1) & 1


def c(x):
    return (x >> 2) & 1


def test_ut3_factorization_decomposition(ut3):
    for x in ALL8:
        x1, x2 = ut3.parts(x)
        # (a,b,c) = (a,0,0) ∘ (0,b,c+ab)
        assert x1 == a(x)
        assert x2 == 2 * b(x) + 4 * ((c(x) + a(x) * b(x)) % 2)
        assert ut3.ring.circ(x1, x2) == x


def test_zero_ring_trivial_factorization():
    fac = verify_factorization(zn_ring(1, 0), [0], [0])
    assert fac.decomp == ((0, 0),)


def test_z4_has_no_factorization():
    ring = zn_ring(4, 2)
    I = (0, 2)
    with pytest.raises(IntersectionNontrivial):
        verify_factorization(ring, (0, 2), I)
    with pytest.raises(AdditiveFactorizationFails):
        verify_factorization(ring, (0,), I)
    with pytest.raises(NotSubring):
        verify_factorization(ring, (0, 1), I)


def test_factorization_errors():
    ring = ut_ring(3)
    with pytest.raises(NotIdeal):
        verify_factorization(ring, [0, 4], ut_span(3, ["e23"]))
    with pytest.raises(FactorizationError):
        verify_factorization(zn_ring(3, 1), [0], [0, 1, 2])


def test_odot_matches_oracle(ut3):
    br = odot_brace(ut3)
    assert br.mul.tolist() == UT3_ODOT
    assert odot_table(3, [0, 1], [0, 2, 4, 6]) == UT3_ODOT
    add, _ = ut_tables(3)
    assert is_left_brace(add, UT3_ODOT)
    assert not np.array_equal(br.mul, catalog("ut3adj").obj.mul)


def test_odot_extreme_factorizations():
    ring = ut_ring(3)
    full = verify_factorization(ring, ALL8, [0])
    assert np.array_equal(odot_brace(full).mul, ring.circ_table)
    none = verify_factorization(ring, [0], ALL8)
    assert np.array_equal(odot_brace(none).mul, ring.circ_table.T)
    assert np.array_equal(odot_brace(none).mul, opposite_brace(catalog("ut3adj").obj).mul)


@pytest.mark.parametrize("name", ["ut3:F2", "ut4:F2"])
def test_odot_brace_is_valid_and_involutive(name):
    fac = catalog(name).obj
    br = fac.brace
    assert check_brace_axioms(br.add, br.mul).ok
    r = yb_from_brace(br)
    assert classify(r) == {"involutive": True, "nondegenerate": True}
    for x in range(fac.ring.size):
        x1, x2 = fac.parts(x)
        assert x1 in fac.S and x2 in fac.I and fac.ring.circ(x1, x2) == x


def test_ut4_odot_matches_oracle():
    fac = catalog("ut4:F2").obj
    assert fac.brace.mul.tolist() == odot_table(4, fac.S, fac.I)


def test_ideal_J_examples(ut3):
    assert verify_ideal_J(ut3.ring, [0], ut3.I).members == (0,)
    assert verify_ideal_J(ut3.ring, [0, 4], ut3.I).members == (0, 4)
    with pytest.raises(NotIdeal) as exc:
        verify_ideal_J(ut3.ring, [0, 2], ut3.I)
    # e12 ∗ e23 = e13 ∉ J
    assert exc.value.witness == (1, 2)
    with pytest.raises(HypothesisFailed):
        verify_ideal_J(ut3.ring, [0, 4], ut3.I, X=[0, 1, 2, 3])


def test_coset_lemma(ut3, ut3_J):
    ident = PointMap.identity(ALL8)
    assert check_coset_lemma(ut3, ut3_J, ident)
    assert check_coset_lemma(ut3, [0], ident)
    k = PointMap.from_function(ALL8, lambda x: x ^ (4 * a(x) * b(x)))
    assert not k.is_identity
    assert check_coset_lemma(ut3, ut3_J, k)
    with pytest.raises(KNotJClose):
        check_coset_lemma(ut3, ut3_J, PointMap.from_function(ALL8, lambda x: x ^ 1))


def test_make_ring_reflection_k2_ideal(ut3, ut3_J):
    f = PointMap.identity(ALL8)
    g = PointMap.from_function(ALL8, lambda x: 2 * b(x))
    k = make_ring_reflection(ut3, f, g, "k2", "ideal", J=ut3_J)
    assert k.image == tuple(x ^ (4 * a(x) * b(x)) for x in ALL8)
    assert k(3) == 7  # e12 + e23 -> e12 + e23 + e13
    table = yb_map(ut3.brace.add.tolist(), ut3.brace.mul.tolist())
    assert is_reflection(table, k._table, ALL8)
    assert check_coset_lemma(ut3, ut3_J, k)


def test_make_ring_reflection_direct(ut3):
    f = PointMap.identity(ALL8)
    g = PointMap.from_function(ALL8, lambda x: 2 * b(x))
    k = make_ring_reflection(ut3, f, g, "k2", "direct")
    assert check_reflection(ut3.yb(), k)


def test_zero_g(ut3, ut3_J):
    f = PointMap.identity(ALL8)
    zero = PointMap.constant(ALL8, 0)
    assert make_ring_reflection(ut3, f, zero, "k2", "ideal", J=ut3_J).is_identity
    k1 = make_ring_reflection(ut3, f, zero, "k1", "direct")
    assert k1.image == (0,) * 8


def test_constant_g_breaks_commutation(ut3, ut3_J):
    f = PointMap.identity(ALL8)
    g = PointMap.constant(ALL8, 1)
    with pytest.raises(HypothesisFailed) as exc:
        make_ring_reflection(ut3, f, g, "k2", "ideal", J=ut3_J)
    assert exc.value.name == "g-commutes-with-I"
    assert exc.value.witness[1] == 2  # z = e23


def test_non_equivariant_f(ut3, ut3_J):
    f = PointMap.from_function(ALL8, lambda x: x ^ 1 if x in (0, 1) else x)
    with pytest.raises(FNotEquivariant):
        make_ring_reflection(ut3, f, PointMap.constant(ALL8, 0), "k2", "ideal", J=ut3_J)


def test_k_minus_x_outside_J(ut3):
    # J = {0} forces k = id; the nontrivial g must be rejected
    f = PointMap.identity(ALL8)
    g = PointMap.from_function(ALL8, lambda x: 2 * b(x))
    with pytest.raises(HypothesisFailed) as exc:
        make_ring_reflection(ut3, f, g, "k2", "ideal", J=[0])
    assert exc.value.name == "k(x) - x in J"


def test_socle_reflections(ut3, ut3_J):
    socop = socle(ut3.brace, "opposite")
    assert socop == (0, 4)
    X = socop
    assert check_socle_reflection(ut3, [0], PointMap.identity(X), X)
    k = coset_socle_map(ut3, ut3_J, X)
    assert k.image == (0, 0)
    assert check_socle_reflection(ut3, ut3_J, k, X)
    with pytest.raises(HypothesisFailed):
        coset_socle_map(ut3, ut3_J)  # the coset {1, 5} misses the socle
    with pytest.raises(HypothesisFailed):
        check_socle_reflection(ut3, [0], PointMap.constant(X, 0), X)


def test_involutive_reflection_degenerate_on_ut3(ut3, ut3_J):
    g = PointMap.from_function(ALL8, lambda x: 4 * b(x))
    k = make_involutive_ring_reflection(ut3, ut3_J, g)
    assert k.is_identity
    assert make_involutive_ring_reflection(ut3, ut3_J, PointMap.constant(ALL8, 0)).is_identity


def test_involutive_reflection_ut4():
    fac = catalog("ut4:F2").obj
    J = catalog("ut4:F2").extras["J"]
    assert J == ut_span(4, ["e24", "e14"])
    carrier = tuple(range(64))
    # g(x) = x23 e24; positions are e12, e23, e34, e13, e24, e14
    g = PointMap.from_function(carrier, lambda x: 16 * ((x >> 1) & 1))
    k = make_involutive_ring_reflection(fac, J, g)
    assert not k.is_identity and is_involutive_map(k)
    # k(x) = x + x12 x23 e14
    assert k.image == tuple(x ^ (32 * (x & 1) * ((x >> 1) & 1)) for x in carrier)
    table = yb_map(fac.brace.add.tolist(), fac.brace.mul.tolist())
    assert is_reflection(table, k._table, carrier)


def test_involutive_reflection_single_e14_is_trivial():
    # with J = span(e14) every admissible g gives x∗g(x) = 0
    fac = catalog("ut4:F2").obj
    J = ut_span(4, ["e14"])
    carrier = tuple(range(64))
    g = PointMap.from_function(carrier, lambda x: 32 * ((x >> 1) & 1))
    assert make_involutive_ring_reflection(fac, J, g).is_identity


def test_involutive_hypotheses(ut3, ut3_J):
    with pytest.raises(HypothesisFailed):
        make_involutive_ring_reflection(ut3, ut3_J, PointMap.constant(ALL8, 2))


def test_ut4_parts():
    fac = catalog("ut4:F2").obj
    assert fac.S == ut_span(4, ["e12"])
    assert fac.I == ut_where(4, lambda v: v["x12"] == 0)
