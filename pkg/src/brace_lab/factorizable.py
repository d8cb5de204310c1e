"""Factorized nilpotent rings and the reflections of their ⊙-braces.

A factorization of a nilpotent ring N is a subring S and a two-sided ideal I
with S ∩ I = 0 and S + I = N. Every x then splits uniquely as x = x1∘x2 in
the adjoint group with x1 ∈ S, x2 ∈ I, and x⊙y = x1∘y∘x2 is a new brace
structure on (N, +).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .algebra import FiniteBrace, FiniteRing, Verdict, check_brace_axioms, normalize_subset, socle
from .errors import (AdditiveFactorizationFails, CarrierMismatch, DecompNotUnique,
                     FactorizationError, FNotEquivariant, HypothesisFailed, ImageEscapesX,
                     IntersectionNontrivial, KNotJClose, NotIdeal, NotSubring, TheoremViolation)
from .reflection import (PointMap, WedgeOp, check_reflection, equivariance_witness,
                         is_involutive_map)
from .yang_baxter import YangBaxterMap, yb_from_brace

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Factorization:
    ring: FiniteRing
    S: tuple[int, ...]
    I: tuple[int, ...]
    decomp: tuple[tuple[int, int], ...]

    def parts(self, x: int) -> tuple[int, int]:
        """``(x1, x2)`` with x1 ∈ S, x2 ∈ I and x = x1∘x2."""
        return self.decomp[x]

    @cached_property
    def brace(self) -> FiniteBrace:
        return odot_brace(self)

    def yb(self, X: Iterable[int] | None = None) -> YangBaxterMap:
        return yb_from_brace(self.brace, X)

    def to_json(self) -> dict:
        from .serialize import ring_to_json
        return {"kind": "factorization", "ring": ring_to_json(self.ring),
                "S": list(self.S), "I": list(self.I)}


@dataclass(frozen=True)
class IdealJ:
    members: tuple[int, ...]


def _subring_witness(ring: FiniteRing, S: tuple[int, ...]):
    s = set(S)
    if 0 not in s:
        return (0,)
    for x in S:
        if ring.negate(x) not in s:
            return (x,)
        for y in S:
            if ring.plus(x, y) not in s or ring.times(x, y) not in s:
                return (x, y)
    return None


def _ideal_witness(ring: FiniteRing, I: tuple[int, ...]):
    s = set(I)
    if 0 not in s:
        return (0,)
    for x in I:
        if ring.negate(x) not in s:
            return (x,)
        for y in I:
            if ring.plus(x, y) not in s:
                return (x, y)
    for x in I:
        for n in range(ring.size):
            if ring.times(n, x) not in s:
                return (n, x)
            if ring.times(x, n) not in s:
                return (x, n)
    return None


def verify_factorization(ring: FiniteRing, S: Iterable[int], I: Iterable[int]) -> Factorization:
    if not ring.is_nilpotent:
        raise FactorizationError("ring is not nilpotent")
    S = normalize_subset(S, ring.size)
    I = normalize_subset(I, ring.size)
    w = _subring_witness(ring, S)
    if w is not None:
        raise NotSubring(f"S is not a subring (witness {w})", w)
    w = _ideal_witness(ring, I)
    if w is not None:
        raise NotIdeal(f"I is not a two-sided ideal (witness {w})", w)
    common = sorted(set(S) & set(I) - {0})
    if common:
        raise IntersectionNontrivial(f"S ∩ I contains {common[0]}", (common[0],))
    sums = {ring.plus(s, i) for s in S for i in I}
    missing = sorted(set(range(ring.size)) - sums)
    if missing:
        raise AdditiveFactorizationFails(f"{ring.label(missing[0])} is not in S + I", (missing[0],))
    decomp: dict[int, tuple[int, int]] = {}
    for s in S:
        for i in I:
            x = ring.circ(s, i)
            if x in decomp:
                raise DecompNotUnique(f"{x} = {decomp[x]} = {(s, i)}", (x,))
            decomp[x] = (s, i)
    if len(decomp) != ring.size:
        missing = sorted(set(range(ring.size)) - set(decomp))
        raise AdditiveFactorizationFails(f"{missing[0]} is not in S∘I", (missing[0],))
    return Factorization(ring, S, I, tuple(decomp[x] for x in range(ring.size)))


def odot_brace(fac: Factorization) -> FiniteBrace:
    """Brace ``(N, +, ⊙)`` with ``x⊙y = x1∘y∘x2``."""
    ring = fac.ring
    n = ring.size
    mul = []
    for x in range(n):
        x1, x2 = fac.decomp[x]
        mul.append([ring.circ(ring.circ(x1, y), x2) for y in range(n)])
    report = check_brace_axioms(ring.add, mul, name=f"odot({ring.name})" if ring.name else "",
                                labels=ring.labels)
    if not report.ok:
        raise TheoremViolation(f"⊙-brace fails {report.axiom}", report.witness)
    return report.brace


def verify_ideal_J(ring: FiniteRing, J: Iterable[int], I: Iterable[int],
                   X: Iterable[int] | None = None) -> IdealJ:
    """Check that J is a two-sided ring ideal contained in I ∩ X."""
    J = normalize_subset(J, ring.size)
    w = _ideal_witness(ring, J)
    if w is not None:
        raise NotIdeal(f"J is not a two-sided ideal (witness {w})", w)
    inside = set(I) & set(normalize_subset(X, ring.size))
    outside = [j for j in J if j not in inside]
    if outside:
        raise HypothesisFailed("J ⊆ I ∩ X", (outside[0],))
    return IdealJ(J)


def _in_J(ring: FiniteRing, J: set, a: int, b: int) -> bool:
    return ring.minus(a, b) in J


def check_coset_lemma(fac: Factorization, J: Iterable[int], k: PointMap,
                      X: Iterable[int] | None = None) -> Verdict:
    """Check τ_{k(y)}(x) - τ_y(x) ∈ J for all x, y ∈ X.

    Requires k(x) - x ∈ J. A failure is a bug (the conclusion is guaranteed)
    and is logged as such.
    """
    ring = fac.ring
    r = fac.yb(X)
    if k.carrier != r.carrier:
        raise CarrierMismatch("k must live on X")
    Jset = set(verify_ideal_J(ring, J, fac.I, r.carrier).members)
    for x in r.carrier:
        if not _in_J(ring, Jset, k(x), x):
            raise KNotJClose((x,))
    tau = r.tau.tolist()
    for x in r.carrier:
        for y in r.carrier:
            if not _in_J(ring, Jset, tau[k(y)][x], tau[y][x]):
                log.error("coset lemma violated at %s: implementation bug", (x, y))
                return Verdict(False, (x, y))
    return Verdict(True)


def ring_wedge(ring: FiniteRing, carrier: Iterable[int], variant: str) -> WedgeOp:
    """``x∧y = x∗y`` (variant k1) or ``x + x∗y`` (variant k2)."""
    if variant == "k1":
        return WedgeOp.from_function(carrier, ring.times)
    if variant == "k2":
        return WedgeOp.from_function(carrier, lambda x, y: ring.plus(x, ring.times(x, y)))
    raise ValueError(f"unknown variant {variant!r}")


def _commutes_with_I(fac: Factorization, g: PointMap):
    ring = fac.ring
    for x in g.carrier:
        gx = g(x)
        for z in fac.I:
            if ring.times(gx, z) != ring.times(z, gx):
                raise HypothesisFailed("g-commutes-with-I", (x, z))


def _constant_on_cosets(ring: FiniteRing, h: PointMap, J: tuple[int, ...], name: str):
    """h(x + j) = h(x) whenever both x and x + j lie in X."""
    xs = set(h.carrier)
    for x in h.carrier:
        for j in J:
            xj = ring.plus(x, j)
            if xj in xs and h(xj) != h(x):
                raise HypothesisFailed(name, (x, j))


def _assert_reflection(r: YangBaxterMap, k: PointMap, what: str):
    verdict = check_reflection(r, k)
    if not verdict:
        raise TheoremViolation(f"{what} is not a reflection", verdict.witness)


def make_ring_reflection(fac: Factorization, f: PointMap, g: PointMap, variant: str = "k2",
                         hypotheses: str = "ideal", J: Iterable[int] | None = None,
                         X: Iterable[int] | None = None) -> PointMap:
    """Build k1(x) = f(x)∗g(x) or k2(x) = f(x) + f(x)∗g(x) on the ⊙-brace.

    ``hypotheses='direct'`` checks the two commutation-type identities of the
    criterion with C = I; ``'ideal'`` checks that g commutes with I, that g
    is constant on J-cosets and that k(x) - x ∈ J. The result is checked
    against the reflection equation before being returned.
    """
    ring = fac.ring
    r = fac.yb(X)
    xs = r.carrier
    if f.carrier != xs or g.carrier != xs:
        raise CarrierMismatch("f and g must live on X")
    w = equivariance_witness(r, f)
    if w is not None:
        raise FNotEquivariant(w)
    if variant == "k1":
        fn = lambda x: ring.times(f(x), g(x))
    elif variant == "k2":
        fn = lambda x: ring.plus(f(x), ring.times(f(x), g(x)))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    s = set(xs)
    for x in xs:
        if fn(x) not in s:
            raise ImageEscapesX((x, fn(x)))
    k = PointMap.from_function(xs, fn)

    if hypotheses == "direct":
        _commutes_with_I(fac, g)
        tau = r.tau.tolist()
        for x in xs:
            for y in xs:
                lhs = ring.times(f(x), g(tau[k(y)][x]))
                if lhs != ring.times(f(x), g(tau[y][x])):
                    raise HypothesisFailed("f-g-tau-invariant", (x, y))
    elif hypotheses == "ideal":
        if J is None:
            raise ValueError("the ideal hypotheses need J")
        Jm = verify_ideal_J(ring, J, fac.I, xs).members
        _commutes_with_I(fac, g)
        _constant_on_cosets(ring, g, Jm, "g(x+J) = g(x)")
        Jset = set(Jm)
        for x in xs:
            if not _in_J(ring, Jset, k(x), x):
                raise HypothesisFailed("k(x) - x in J", (x,))
    else:
        raise ValueError(f"unknown hypothesis set {hypotheses!r}")
    _assert_reflection(r, k, f"ring reflection {variant}")
    return k


def check_socle_reflection(fac: Factorization, J: Iterable[int], k: PointMap,
                           X: Iterable[int] | None = None) -> Verdict:
    """Verify the hypotheses that make a socle-valued k a reflection, then k itself."""
    ring = fac.ring
    r = fac.yb(X)
    xs = r.carrier
    if k.carrier != xs:
        raise CarrierMismatch("k must live on X")
    Jm = verify_ideal_J(ring, J, fac.I, xs).members
    _constant_on_cosets(ring, k, Jm, "k(x+J) = k(x)")
    Jset = set(Jm)
    for x in xs:
        if not _in_J(ring, Jset, k(x), x):
            raise HypothesisFailed("k(x) - x in J", (x,))
    soc = set(socle(fac.brace, "opposite"))
    for x in xs:
        if k(x) not in soc:
            raise HypothesisFailed("k(x) in Soc(B^op) ∩ X", (x,))
    _assert_reflection(r, k, "socle reflection")
    return Verdict(True)


def coset_socle_map(fac: Factorization, J: Iterable[int], X: Iterable[int] | None = None) -> PointMap:
    """Map each x to the least element of (x + J) ∩ Soc(B^op) ∩ X.

    Raises :class:`HypothesisFailed` when some coset misses the socle.
    """
    ring = fac.ring
    xs = normalize_subset(X, ring.size)
    soc = set(socle(fac.brace, "opposite")) & set(xs)
    J = normalize_subset(J, ring.size)
    image = []
    for x in xs:
        reps = sorted(ring.plus(x, j) for j in J if ring.plus(x, j) in soc)
        if not reps:
            raise HypothesisFailed("coset meets Soc(B^op) ∩ X", (x,))
        image.append(reps[0])
    return PointMap(xs, tuple(image))


def make_involutive_ring_reflection(fac: Factorization, J: Iterable[int], g: PointMap,
                                    X: Iterable[int] | None = None) -> PointMap:
    """``k(x) = x + x∗g(x)`` for g valued in J, J-invariant, commuting with I
    and with every g(x) an involution of the adjoint group."""
    ring = fac.ring
    r = fac.yb(X)
    xs = r.carrier
    if g.carrier != xs:
        raise CarrierMismatch("g must live on X")
    Jm = verify_ideal_J(ring, J, fac.I, xs).members
    Jset = set(Jm)
    _commutes_with_I(fac, g)
    _constant_on_cosets(ring, g, Jm, "g(x+J) = g(x)")
    for x in xs:
        if g(x) not in Jset:
            raise HypothesisFailed("g(x) in J", (x,))
        if ring.circ(g(x), g(x)) != 0:
            raise HypothesisFailed("g(x)∘g(x) = 0", (x,))
    s = set(xs)
    fn = lambda x: ring.plus(x, ring.times(x, g(x)))
    for x in xs:
        if fn(x) not in s:
            raise ImageEscapesX((x, fn(x)))
    k = PointMap.from_function(xs, fn)
    if not is_involutive_map(k):
        raise TheoremViolation("x + x∗g(x) is not involutive")
    _assert_reflection(r, k, "x + x∗g(x)")
    return k
