"""Parameter-dependent Yang-Baxter and reflection equations.

A solution r on X is linearized to a 0/1 matrix R on V ⊗ V with V = span(X)
and basis order ``(x, y) -> pos(x) * |X| + pos(y)``; a map k becomes the
matrix K on V with ``K[pos k(x), pos x] = 1``. The baxterized forms are
R'(w) = I + w R and K'(w) = w K for an integer linear form w in u, v.

The equations are compared as exact polynomial matrices over Z[u, v]:

    (R'(u)⊗I)(I⊗R'(u+v))(R'(v)⊗I) = (I⊗R'(v))(R'(u+v)⊗I)(I⊗R'(u))

    (I⊗K'(v)) R'(u+v) (I⊗K'(u)) R'(u-v) = R'(u-v) (I⊗K'(u)) R'(u+v) (I⊗K'(v))

Matrix products read right to left, matching the set-theoretic
r(id×k)r(id×k) = (id×k)r(id×k)r.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import KNotInvolutive, RNotInvolutive
from .poly import Poly2, PolyMatrix
from .reflection import PointMap
from .yang_baxter import YangBaxterMap

# Both sides of the reflection equation are u v (a + b u + c v + d u^2 + ...)
# with at most cubic terms in either variable; see ``check_param_reflection``.
REFLECTION_DEGREE_BOUND = {"u": 3, "v": 3, "total": 4}
YBE_DEGREE_BOUND = {"u": 2, "v": 2, "total": 3}


def linearize_point_map(k: PointMap) -> PolyMatrix:
    c = len(k.carrier)
    M = np.zeros((c, c), dtype=np.int64)
    M[k.local, np.arange(c)] = 1
    return PolyMatrix.constant(M)


def linearize_r(r: YangBaxterMap) -> PolyMatrix:
    S, T = r.local
    c = len(r.carrier)
    x, y = np.meshgrid(np.arange(c), np.arange(c), indexing="ij")
    M = np.zeros((c * c, c * c), dtype=np.int64)
    M[(S * c + T).ravel(), (x * c + y).ravel()] = 1
    return PolyMatrix.constant(M)


def as_form(arg) -> Poly2:
    """Accept a :class:`Poly2`, an int, a string like ``"u-v"`` or a triple ``(a, b, c)``."""
    if isinstance(arg, Poly2):
        return arg
    if isinstance(arg, (int, np.integer)):
        return Poly2.const(int(arg))
    if isinstance(arg, str):
        return Poly2.parse(arg)
    a, b, c = arg
    return Poly2.linear(a, b, c)


def R_prime(R: PolyMatrix, arg) -> PolyMatrix:
    """``I + w R``."""
    return PolyMatrix.identity(R.dim) + R.scale(as_form(arg))


def K_prime(K: PolyMatrix, arg) -> PolyMatrix:
    """``w K``."""
    return K.scale(as_form(arg))


def _constant(M: PolyMatrix) -> np.ndarray:
    if set(M.coeffs) - {(0, 0)}:
        raise ValueError("expected a constant matrix")
    return M.coeffs.get((0, 0), np.zeros((M.dim, M.dim), dtype=np.int64))


def is_involutive_matrix(M: PolyMatrix) -> bool:
    C = _constant(M)
    return bool(np.array_equal(C @ C, np.eye(M.dim, dtype=C.dtype)))


@dataclass
class ParamReport:
    identity: bool
    dim: int
    witness: tuple[int, int] | None = None
    lhs_entry: Poly2 | None = None
    rhs_entry: Poly2 | None = None
    degrees: dict = field(default_factory=dict)
    degree_ok: bool = True

    def __bool__(self) -> bool:
        return self.identity

    def to_json(self) -> dict:
        out = {"identity": self.identity, "dim": self.dim, "degrees": self.degrees,
               "degree_ok": self.degree_ok,
               "witness": list(self.witness) if self.witness else None}
        if self.witness is not None:
            out["lhs_entry"] = self.lhs_entry.to_json()
            out["rhs_entry"] = self.rhs_entry.to_json()
        return out


def _degrees(*mats: PolyMatrix) -> dict:
    return {"u": max(m.degree_u for m in mats), "v": max(m.degree_v for m in mats),
            "total": max(m.degree for m in mats)}


def _report(lhs: PolyMatrix, rhs: PolyMatrix, bound: dict) -> ParamReport:
    w = lhs.first_mismatch(rhs)
    deg = _degrees(lhs, rhs)
    ok = all(deg[key] <= bound[key] for key in bound)
    if w is None:
        return ParamReport(True, lhs.dim, degrees=deg, degree_ok=ok)
    return ParamReport(False, lhs.dim, w, lhs.entry(*w), rhs.entry(*w), deg, ok)


def ybe_sides(R: PolyMatrix, c: int):
    I = PolyMatrix.identity(c)
    R12 = lambda w: R_prime(R, w).kron(I)
    R23 = lambda w: I.kron(R_prime(R, w))
    lhs = R12("u") @ R23("u+v") @ R12("v")
    rhs = R23("v") @ R12("u+v") @ R23("u")
    return lhs, rhs


def check_param_ybe(R: PolyMatrix) -> ParamReport:
    """Compare both sides of the parametric braid relation on V⊗V⊗V.

    No involutivity guard: for non-involutive R the identity generally fails
    and the report carries the least mismatching entry.
    """
    c = int(round(R.dim ** 0.5))
    if c * c != R.dim:
        raise ValueError(f"R has dimension {R.dim}, which is not a square")
    lhs, rhs = ybe_sides(R, c)
    return _report(lhs, rhs, YBE_DEGREE_BOUND)


def reflection_sides(R: PolyMatrix, K: PolyMatrix, affine_k: bool = False):
    c = K.dim
    if R.dim != c * c:
        raise ValueError(f"R has dimension {R.dim}, K has {c}; expected R of dimension {c * c}")
    I = PolyMatrix.identity(c)

    def k2(w):
        Kw = K_prime(K, w)
        if affine_k:
            Kw = I + Kw
        return I.kron(Kw)

    lhs = k2("v") @ R_prime(R, "u+v") @ k2("u") @ R_prime(R, "u-v")
    rhs = R_prime(R, "u-v") @ k2("u") @ R_prime(R, "u+v") @ k2("v")
    return lhs, rhs


def check_param_reflection(R: PolyMatrix, K: PolyMatrix, affine_k: bool = False,
                           guard: bool = True) -> ParamReport:
    """Compare both sides of the parametric reflection equation on V⊗V.

    R and K must be involutive (checked unless ``guard`` is off). With
    ``affine_k`` the boundary factor I + wK replaces wK; this is an
    experiment, no identity is claimed for it. The report also audits entry
    degrees against :data:`REFLECTION_DEGREE_BOUND`.
    """
    if guard:
        if not is_involutive_matrix(R):
            raise RNotInvolutive()
        if not is_involutive_matrix(K):
            raise KNotInvolutive()
    lhs, rhs = reflection_sides(R, K, affine_k)
    bound = dict(REFLECTION_DEGREE_BOUND)
    if affine_k:
        bound = {"u": 4, "v": 4, "total": 6}
    return _report(lhs, rhs, bound)


def spot_check(R: PolyMatrix, K: PolyMatrix, u: int, v: int) -> bool:
    """Evaluate the reflection sides at integers two ways and compare.

    One way evaluates the polynomial products; the other multiplies the
    integer matrices I + wR and wK directly.
    """
    lhs, rhs = reflection_sides(R, K)
    Rc = _constant(R).astype(object)
    Kc = _constant(K).astype(object)
    c = K.dim
    Ic, Ic2 = np.eye(c, dtype=object), np.eye(c * c, dtype=object)
    Rw = lambda w: Ic2 + w * Rc
    Kw = lambda w: np.kron(Ic, w * Kc)
    direct_l = Kw(v).dot(Rw(u + v)).dot(Kw(u)).dot(Rw(u - v))
    direct_r = Rw(u - v).dot(Kw(u)).dot(Rw(u + v)).dot(Kw(v))
    return bool(np.array_equal(lhs.evaluate(u, v), direct_l)
                and np.array_equal(rhs.evaluate(u, v), direct_r))
