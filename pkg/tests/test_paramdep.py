import numpy as np
import pytest

from brace_lab.algebra import socle
from brace_lab.catalog import catalog, cyclic_tables, trivial_brace
from brace_lab.errors import KNotInvolutive, RNotInvolutive
from brace_lab.paramdep import (REFLECTION_DEGREE_BOUND, K_prime, R_prime, check_param_reflection,
                                check_param_ybe, linearize_point_map, linearize_r, reflection_sides,
                                spot_check, ybe_sides)
from brace_lab.poly import Poly2, PolyMatrix
from brace_lab.reflection import PointMap, family
from brace_lab.yang_baxter import custom_yb, yb_from_brace

from oracles import (matrix_of_map, perm_matrix_of_r, sympy_reflection_sides, sympy_ybe_sides,
                     yb_map)


def to_sympy(M: PolyMatrix, u, v):
    import sympy as sp
    out = sp.zeros(M.dim, M.dim)
    for (du, dv), C in M.coeffs.items():
        out += sp.Matrix(C.tolist()) * u ** du * v ** dv
    return out.expand()


@pytest.fixture
def z4_k1(z4):
    return yb_from_brace(z4), family(z4, "k1", c=1)


def test_linearize_examples(z4, z4_k1):
    r, k1 = z4_k1
    assert k1.image == (0, 3, 2, 1)
    K = linearize_point_map(k1).evaluate(0, 0)
    assert K.tolist() == matrix_of_map(dict(enumerate(k1.image)), range(4))
    R = linearize_r(r).evaluate(0, 0)
    assert R.tolist() == perm_matrix_of_r(yb_map(z4.add.tolist(), z4.mul.tolist()), range(4))
    # the flip linearizes to the swap P(e_x ⊗ e_y) = e_y ⊗ e_x
    F = linearize_r(yb_from_brace(trivial_brace(2))).evaluate(0, 0)
    assert F.tolist() == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]


def test_baxterized_forms_at_zero(z4_k1):
    r, k1 = z4_k1
    R, K = linearize_r(r), linearize_point_map(k1)
    assert np.array_equal(R_prime(R, "u").evaluate(0, 5), np.eye(16, dtype=int))
    assert not K_prime(K, "u").evaluate(0, 5).any()
    # r(0, 0) = (0, 0), so the corner of I + (2u + 1) R is 2u + 2
    assert R_prime(R, (2, 0, 1)).entry(0, 0) == Poly2.linear(2, 0, 2)


def test_z4_reflection_identity_matches_sympy(z4, z4_k1):
    import sympy as sp
    r, k1 = z4_k1
    assert z4.circ(1, 1) in socle(z4, "left")
    R, K = linearize_r(r), linearize_point_map(k1)
    rep = check_param_reflection(R, K)
    assert rep.identity and rep.dim == 16 and rep.degree_ok
    lhs, rhs = reflection_sides(R, K)
    sl, sr, (u, v) = sympy_reflection_sides(R.evaluate(0, 0).tolist(), K.evaluate(0, 0).tolist())
    assert sl == sr
    assert (to_sympy(lhs, u, v) - sl).expand() == sp.zeros(16, 16)
    assert (to_sympy(rhs, u, v) - sr).expand() == sp.zeros(16, 16)


def test_z4_ybe_identity_matches_sympy(z4_k1):
    import sympy as sp
    r, _ = z4_k1
    R = linearize_r(r)
    rep = check_param_ybe(R)
    assert rep.identity and rep.dim == 64 and rep.degree_ok
    lhs, _ = ybe_sides(R, 4)
    sl, sr, (u, v) = sympy_ybe_sides(R.evaluate(0, 0).tolist())
    assert (sl - sr).expand() == sp.zeros(64, 64)
    assert (to_sympy(lhs, u, v) - sl).expand() == sp.zeros(64, 64)


def test_non_involutive_ybe_fails_with_frozen_witness():
    import sympy as sp
    R = linearize_r(custom_yb(*cyclic_tables(3)))
    rep = check_param_ybe(R)
    assert not rep.identity
    assert rep.witness == (0, 8)
    assert rep.lhs_entry != rep.rhs_entry
    sl, sr, (u, v) = sympy_ybe_sides(R.evaluate(0, 0).tolist())
    assert sl[0, 8] != sr[0, 8]
    # every entry before the witness agrees in the oracle
    assert all(sp.expand(sl[0, j] - sr[0, j]) == 0 for j in range(8))
    assert sp.expand(sl[0, 8] - to_sympy(PolyMatrix.from_entries([[rep.lhs_entry]]), u, v)[0, 0]) == 0


def test_guards():
    R = linearize_r(custom_yb(*cyclic_tables(3)))
    K = linearize_point_map(PointMap.identity(range(3)))
    with pytest.raises(RNotInvolutive):
        check_param_reflection(R, K)
    r = yb_from_brace(catalog("z4adj").obj)
    with pytest.raises(KNotInvolutive):
        check_param_reflection(linearize_r(r), linearize_point_map(PointMap.constant(range(4), 0)))
    with pytest.raises(ValueError):
        check_param_reflection(linearize_r(r), linearize_point_map(PointMap.identity(range(3))))


@pytest.mark.parametrize("u, v", [(u, v) for u in range(3) for v in range(3)] + [(-4, 5), (7, -2)])
def test_spot_checks(z4_k1, u, v):
    r, k1 = z4_k1
    assert spot_check(linearize_r(r), linearize_point_map(k1), u, v)


@pytest.mark.parametrize("name", ["trivial:2", "trivial:3", "z4adj"])
def test_identity_reflection_degree_audit(name):
    b = catalog(name).obj
    n = b.size
    rep = check_param_reflection(linearize_r(yb_from_brace(b)),
                                 linearize_point_map(PointMap.identity(range(n))))
    assert rep.identity
    assert rep.degree_ok
    assert rep.degrees == REFLECTION_DEGREE_BOUND


def test_affine_k_is_reported_not_asserted(z4_k1):
    r, k1 = z4_k1
    rep = check_param_reflection(linearize_r(r), linearize_point_map(k1), affine_k=True)
    assert rep.degree_ok
    assert isinstance(rep.identity, bool)
