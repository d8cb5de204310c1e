"""Reflections, equivariant maps and the reflection families of a brace.

A reflection of (X, r) is a map k: X -> X with

    r (id×k) r (id×k) = (id×k) r (id×k) r

on X × X. Checks are vectorised over batches of candidate maps so that the
exhaustive enumeration of all |X|^|X| maps stays cheap for |X| ≤ 6.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import FiniteBrace, Verdict, first_true, normalize_subset, socle
from .errors import (BudgetExceeded, CarrierMismatch, ConditionFailed, FNotEquivariant,
                     ImageEscapesX, NotCentral, NotInSocle, ShortcutUnsound, TheoremViolation)
from .yang_baxter import YangBaxterMap, yb_from_brace

log = logging.getLogger(__name__)

FULL = "full"
FIRST = "first-coordinate"


@dataclass(frozen=True)
class PointMap:
    """A total map on ``carrier``; ``image[i]`` is the image of ``carrier[i]``."""

    carrier: tuple[int, ...]
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.carrier) != len(self.image):
            raise CarrierMismatch("image must have one entry per carrier point")
        bad = [v for v in self.image if v not in self._pos]
        if bad:
            raise ImageEscapesX((bad[0],))

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.carrier)}

    @cached_property
    def _table(self) -> dict[int, int]:
        return dict(zip(self.carrier, self.image))

    def __call__(self, x: int) -> int:
        return self._table[x]

    @classmethod
    def from_function(cls, carrier: Iterable[int], fn: Callable[[int], int]) -> "PointMap":
        carrier = tuple(carrier)
        return cls(carrier, tuple(int(fn(x)) for x in carrier))

    @classmethod
    def identity(cls, carrier: Iterable[int]) -> "PointMap":
        carrier = tuple(carrier)
        return cls(carrier, carrier)

    @classmethod
    def constant(cls, carrier: Iterable[int], a: int) -> "PointMap":
        carrier = tuple(carrier)
        return cls(carrier, (a,) * len(carrier))

    @property
    def local(self) -> np.ndarray:
        """Images as carrier positions."""
        return np.array([self._pos[v] for v in self.image], dtype=np.int64)

    @property
    def is_identity(self) -> bool:
        return self.image == self.carrier

    def to_json(self) -> dict:
        return {"carrier": list(self.carrier), "image": list(self.image)}


@dataclass(frozen=True)
class WedgeOp:
    """Binary operation ``wedge(x, y)`` for x, y in the carrier."""

    carrier: tuple[int, ...]
    table: dict

    @classmethod
    def from_function(cls, carrier: Iterable[int], fn: Callable[[int, int], int]) -> "WedgeOp":
        carrier = tuple(carrier)
        s = set(carrier)
        table = {}
        for x in carrier:
            for y in carrier:
                v = int(fn(x, y))
                if v not in s:
                    raise ImageEscapesX((x, y))
                table[x, y] = v
        return cls(carrier, table)

    def __call__(self, x: int, y: int) -> int:
        return self.table[x, y]


def _as_batch(k) -> np.ndarray:
    arr = np.asarray(k, dtype=np.int64)
    return arr[None, :] if arr.ndim == 1 else arr


def _gather(K: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """``K[m, idx[m, ...]]`` for a batch of maps."""
    m = K.shape[0]
    flat = np.take_along_axis(K, idx.reshape(m, -1), axis=1)
    return flat.reshape(idx.shape)


def reflection_sides(S: np.ndarray, T: np.ndarray, K: np.ndarray):
    """Both sides of the reflection equation for a batch of local maps.

    ``K`` has shape (m, c); returns ``(lhs, rhs)`` each a pair of arrays of
    shape (m, c, c) indexed by map and input pair (a, b).
    """
    m, c = K.shape
    a = np.broadcast_to(np.arange(c)[None, :, None], (m, c, c))
    b = np.broadcast_to(np.arange(c)[None, None, :], (m, c, c))
    # r (id×k) r (id×k)
    q = _gather(K, b)
    p, q = S[a, q], T[a, q]
    q = _gather(K, q)
    lhs = (S[p, q], T[p, q])
    # (id×k) r (id×k) r
    p, q = S[a, b], T[a, b]
    q = _gather(K, q)
    p, q = S[p, q], T[p, q]
    rhs = (p, _gather(K, q))
    return lhs, rhs


def reflection_mask(S, T, K, mode: str = FULL) -> np.ndarray:
    """Boolean array (m, c, c), true where the equation fails."""
    lhs, rhs = reflection_sides(S, T, K)
    bad = lhs[0] != rhs[0]
    if mode == FULL:
        bad |= lhs[1] != rhs[1]
    return bad


def equivariance_mask(S, K) -> np.ndarray:
    """True where ``k(σ_x(y)) != σ_x(k(y))``, shape (m, c, c) over (x, y)."""
    m, c = K.shape
    ky = np.broadcast_to(K[:, None, :], (m, c, c))
    lhs = _gather(K, np.broadcast_to(S[None], (m, c, c)))
    rhs = S[np.arange(c)[None, :, None], ky]
    return lhs != rhs


def _check_map(r: YangBaxterMap, k: PointMap) -> None:
    if k.carrier != r.carrier:
        raise CarrierMismatch("map and solution have different carriers")


def check_reflection(r: YangBaxterMap, k: PointMap, mode: str = FULL) -> Verdict:
    """Decide the reflection equation for ``k``; witness is the least failing (a, b).

    ``mode='first-coordinate'`` compares first coordinates only, which is
    sound for involutive nondegenerate r and rejected otherwise.
    """
    _check_map(r, k)
    if mode == FIRST:
        flags = r.flags
        if not (flags["involutive"] and flags["nondegenerate"]):
            raise ShortcutUnsound("first-coordinate check needs an involutive nondegenerate r")
    elif mode != FULL:
        raise ValueError(f"unknown mode {mode!r}")
    S, T = r.local
    bad = first_true(reflection_mask(S, T, _as_batch(k.local), mode)[0])
    if bad is None:
        return Verdict(True)
    return Verdict(False, (r.carrier[bad[0]], r.carrier[bad[1]]))


def is_equivariant(r: YangBaxterMap, k: PointMap) -> bool:
    """``k σ_x = σ_x k`` for every x in the carrier."""
    return equivariance_witness(r, k) is None


def equivariance_witness(r: YangBaxterMap, k: PointMap) -> tuple | None:
    _check_map(r, k)
    S, _ = r.local
    bad = first_true(equivariance_mask(S, _as_batch(k.local))[0])
    if bad is None:
        return None
    return r.carrier[bad[0]], r.carrier[bad[1]]


def is_involutive_map(k: PointMap) -> bool:
    return all(k(k(x)) == x for x in k.carrier)


# -- enumeration ---------------------------------------------------------------

@dataclass
class ReflectionReport:
    carrier_size: int
    scanned: int
    reflections: list[tuple[int, ...]] | None = None
    equivariant: list[tuple[int, ...]] | None = None
    reflection_count: int = 0
    equivariant_count: int = 0
    involutive_reflections: int = 0
    truncated: bool = False
    carrier: tuple[int, ...] = ()

    def to_json(self, emit_maps: bool = False) -> dict:
        out = {"carrier": list(self.carrier), "carrier_size": self.carrier_size,
               "scanned": self.scanned, "truncated": self.truncated,
               "involutive_reflections": self.involutive_reflections}
        if self.reflections is not None:
            out["reflection_count"] = self.reflection_count
            if emit_maps:
                out["reflections"] = [list(m) for m in self.reflections]
        if self.equivariant is not None:
            out["equivariant_count"] = self.equivariant_count
            if emit_maps:
                out["equivariant"] = [list(m) for m in self.equivariant]
        return out


def _maps_in_range(c: int, start: int, stop: int) -> np.ndarray:
    """Image arrays (local) of maps number ``start..stop-1`` in lexicographic order."""
    idx = np.arange(start, stop, dtype=np.int64)
    powers = c ** np.arange(c - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % c


def _scan(args):
    S, T, start, stop, want_refl, want_equiv, chunk = args
    c = S.shape[0]
    refl, equiv, inv = [], [], 0
    ident = np.arange(c)
    for lo in range(start, stop, chunk):
        K = _maps_in_range(c, lo, min(stop, lo + chunk))
        if want_refl:
            ok = ~reflection_mask(S, T, K).reshape(K.shape[0], -1).any(axis=1)
            hits = K[ok]
            refl.extend(tuple(int(v) for v in row) for row in hits)
            if hits.size:
                inv += int((np.take_along_axis(hits, hits, axis=1) == ident).all(axis=1).sum())
        if want_equiv:
            ok = ~equivariance_mask(S, K).reshape(K.shape[0], -1).any(axis=1)
            equiv.extend(tuple(int(v) for v in row) for row in K[ok])
    return refl, equiv, inv


def default_jobs() -> int:
    return int(os.environ.get("BRACE_LAB_JOBS", "1"))


def enumerate_maps(r: YangBaxterMap, filter: str = "both", budget: int | None = None,
                   allow_truncation: bool = True, jobs: int | None = None,
                   chunk: int = 4096) -> ReflectionReport:
    """Scan all maps X -> X in lexicographic order of their image arrays.

    With ``budget`` smaller than |X|^|X| only the first ``budget`` maps are
    scanned and the report is flagged truncated, unless ``allow_truncation``
    is false, in which case :class:`BudgetExceeded` is raised. Work is split
    by ``image[0]`` across ``jobs`` processes; the merged report does not
    depend on the worker count.
    """
    if filter not in ("reflections", "equivariant", "both"):
        raise ValueError(f"unknown filter {filter!r}")
    S, T = r.local
    c = len(r.carrier)
    total = c ** c
    stop = total
    truncated = False
    if budget is not None and total > budget:
        if not allow_truncation:
            raise BudgetExceeded(f"{total} maps exceed the budget of {budget}")
        stop, truncated = budget, True
    want_refl = filter in ("reflections", "both")
    want_equiv = filter in ("equivariant", "both")
    block = c ** (c - 1)
    parts = [(S, T, lo, min(stop, lo + block), want_refl, want_equiv, chunk)
             for lo in range(0, stop, block)]
    jobs = default_jobs() if jobs is None else jobs
    if jobs > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan, parts))
    else:
        results = [_scan(p) for p in parts]
    refl, equiv, inv = [], [], 0
    for rr, ee, ii in results:  # parts are in image[0] order already
        refl += rr
        equiv += ee
        inv += ii
    carrier = r.carrier

    def glob(rows):
        return [tuple(carrier[v] for v in row) for row in rows]

    return ReflectionReport(
        carrier_size=c, scanned=stop,
        reflections=glob(refl) if want_refl else None,
        equivariant=glob(equiv) if want_equiv else None,
        reflection_count=len(refl), equivariant_count=len(equiv),
        involutive_reflections=inv, truncated=truncated, carrier=carrier)


# -- near-ring of equivariant maps ---------------------------------------------

def nearring_combine(brace: FiniteBrace, op: str, f: PointMap, g: PointMap | None = None) -> PointMap:
    """Pointwise sum, composition f∘g, or pointwise negation of maps on X ⊆ B."""
    if op == "negate":
        return PointMap.from_function(f.carrier, lambda x: brace.negate(f(x)))
    if g is None:
        raise ValueError(f"{op} needs two maps")
    if f.carrier != g.carrier:
        raise CarrierMismatch("maps live on different carriers")
    if op == "add":
        return PointMap.from_function(f.carrier, lambda x: brace.plus(f(x), g(x)))
    if op == "compose":
        return PointMap.from_function(f.carrier, lambda x: f(g(x)))
    raise ValueError(f"unknown op {op!r}")


# -- the families ---------------------------------------------------------------

FAMILIES = ("cnst_a", "m_c", "k1", "k2", "k1n", "k2n", "tilde_m", "hat_m", "l_mn")
_NEEDS_TORSION = {"k2", "k2n", "tilde_m", "hat_m", "l_mn"}


def check_two_torsion_condition(brace: FiniteBrace, c: int, X: Iterable[int] | None = None):
    """Whether ``2(c∘x) = 2x + 2c`` on X.

    Returns ``(verdict, in_socle)`` where ``in_socle`` reports the stronger
    sufficient condition c ∈ Soc(B), equivalently c⋆b = 0 for all b.
    """
    xs = normalize_subset(X, brace.size)
    two_c = brace.multiple(2, c)
    witness = None
    for x in xs:
        if brace.multiple(2, brace.circ(c, x)) != brace.plus(brace.multiple(2, x), two_c):
            witness = (x,)
            break
    in_socle = all(brace.star(c, b) == 0 for b in range(brace.size))
    return Verdict(witness is None, witness), in_socle


def _tilde_hat(brace: FiniteBrace, c: int, m: int, sign: int):
    c2m = brace.power(c, 2 * m)
    even = brace.sum(brace.power(c, 2 * j) for j in range(1, m))
    odd = brace.sum(brace.power(c, 2 * j - 1) for j in range(1, m + 1))
    shift = brace.sum([brace.multiple(sign, c2m), brace.multiple(2 * sign, even),
                       brace.multiple(-2 * sign, odd)])
    return lambda x: brace.plus(brace.circ(c2m, x), shift)


def family(brace: FiniteBrace, kind: str, X: Iterable[int] | None = None, *, c: int | None = None,
           a: int | None = None, n: int = 0, m: int = 1, force: bool = False) -> PointMap:
    """Construct one of the reflection families of a brace on X.

    ``cnst_a`` needs ``a``; all other kinds need ``c``. Hypotheses are checked
    before construction unless ``force`` is set; the image must lie in X in
    every case.
    """
    if kind not in FAMILIES:
        raise ValueError(f"unknown family {kind!r}; expected one of {FAMILIES}")
    xs = normalize_subset(X, brace.size)
    if kind == "cnst_a":
        if a is None:
            raise ValueError("cnst_a needs a")
        if not force and (a not in socle(brace, "opposite") or a not in xs):
            raise NotInSocle("a in Soc(B^op) ∩ X", (a,))
        return PointMap.constant(xs, a)
    if c is None:
        raise ValueError(f"{kind} needs c")
    if kind in ("tilde_m", "hat_m", "l_mn") and m < 1:
        raise ValueError("m must be a positive integer")
    if not force:
        if not brace.is_central(c):
            w = next(y for y in range(brace.size) if brace.circ(c, y) != brace.circ(y, c))
            raise NotCentral((c, w))
        if kind == "m_c" and c not in socle(brace, "left"):
            raise NotInSocle("c in Soc(B)", (c,))
        if kind in _NEEDS_TORSION:
            verdict, _ = check_two_torsion_condition(brace, c, xs)
            if not verdict:
                raise ConditionFailed(verdict.witness)

    B = brace
    if kind == "m_c":
        fn = lambda x: B.circ(c, x)
    elif kind == "k1":
        fn = lambda x: B.minus(B.circ(c, x), c)
    elif kind == "k2":
        fn = lambda x: B.plus(B.circ(c, x), c)
    elif kind == "k1n":
        fn = lambda x: B.plus(B.minus(B.circ(c, x), c), B.multiple(n, x))
    elif kind == "k2n":
        fn = lambda x: B.plus(B.plus(B.circ(c, x), c), B.multiple(n, x))
    elif kind == "tilde_m":
        fn = _tilde_hat(B, c, m, +1)
    elif kind == "hat_m":
        fn = _tilde_hat(B, c, m, -1)
    else:  # l_mn
        fn = lambda x: B.plus(B.multiple(2 * m, c), B.multiple(2 * m + n, x))
    s = set(xs)
    for x in xs:
        if fn(x) not in s:
            raise ImageEscapesX((x, fn(x)))
    return PointMap.from_function(xs, fn)


# -- wedge criterion -----------------------------------------------------------

def check_wedge_theorem(r: YangBaxterMap, f: PointMap, g: PointMap, wedge: WedgeOp) -> dict:
    """Evaluate the wedge criterion for k(x) = f(x) ∧ g(x).

    Returns the hypothesis ``sigma_compatible`` (σ_x(y ∧ g(z)) = σ_x(y) ∧ g(z)),
    the ``criterion`` f(x) ∧ g(τ_{k(y)}(x)) = f(x) ∧ g(τ_y(x)) and the
    independent verdict ``is_reflection``. When the hypothesis holds the
    criterion and the verdict must agree; disagreement raises
    :class:`TheoremViolation`.
    """
    xs = r.carrier
    if f.carrier != xs or g.carrier != xs or wedge.carrier != xs:
        raise CarrierMismatch("f, g, wedge and r must share a carrier")
    w = equivariance_witness(r, f)
    if w is not None:
        raise FNotEquivariant(w)
    sigma, tau = r.sigma, r.tau
    hyp_witness = None
    for x in xs:
        for y in xs:
            for z in xs:
                if int(sigma[x, wedge(y, g(z))]) != wedge(int(sigma[x, y]), g(z)):
                    hyp_witness = (x, y, z)
                    break
            if hyp_witness:
                break
        if hyp_witness:
            break
    k = PointMap.from_function(xs, lambda x: wedge(f(x), g(x)))
    crit_witness = None
    for x in xs:
        for y in xs:
            if wedge(f(x), g(int(tau[k(y), x]))) != wedge(f(x), g(int(tau[y, x]))):
                crit_witness = (x, y)
                break
        if crit_witness:
            break
    verdict = check_reflection(r, k)
    out = {"sigma_compatible": hyp_witness is None, "hypothesis_witness": hyp_witness,
           "criterion": crit_witness is None, "criterion_witness": crit_witness,
           "is_reflection": verdict.ok, "reflection_witness": verdict.witness, "k": k}
    if hyp_witness is None and (crit_witness is None) != verdict.ok:
        raise TheoremViolation("wedge criterion and reflection check disagree",
                               crit_witness or verdict.witness)
    return out


def equivariant_maps(brace: FiniteBrace, X: Iterable[int] | None = None) -> list[PointMap]:
    """All equivariant maps of the brace's Yang-Baxter map on X (exhaustive)."""
    r = yb_from_brace(brace, X)
    rep = enumerate_maps(r, filter="equivariant")
    return [PointMap(r.carrier, img) for img in rep.equivariant]
