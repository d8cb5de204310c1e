"""The acceptance suite: ten exact checks with wall-clock limits.

Shared by ``tests/test_acceptance.py`` and ``brace-lab selftest``. Each
criterion returns a :class:`CriterionResult`; it passes only if every exact
check holds and it finished inside its time limit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product

import numpy as np

from .algebra import socle
from .catalog import catalog, catalog_braces, ut_span
from .factorizable import (check_coset_lemma, make_ring_reflection, odot_brace,
                           verify_factorization)
from .paramdep import check_param_reflection, check_param_ybe, linearize_point_map, linearize_r
from .reflection import (PointMap, check_reflection, check_two_torsion_condition,
                         enumerate_maps, equivariant_maps, family, is_equivariant,
                         is_involutive_map)
from .yang_baxter import check_sigma_identities, classify, yb_from_brace


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float
    limit: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return (f"[{mark}] {self.number:2d}. {self.name}: {self.detail} "
                f"({self.elapsed:.2f}s / limit {self.limit:g}s)")

    def to_json(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "detail": self.detail, "elapsed": round(self.elapsed, 3), "limit": self.limit}


def _cyclic_counts():
    bad = []
    for n in range(2, 7):
        rep = enumerate_maps(catalog(f"cyclic:{n}").obj, filter="reflections")
        shifted = all(k[(b + 1) % n] == (k[b] + 1) % n for k in rep.reflections for b in range(n))
        if rep.reflection_count != n or not shifted:
            bad.append(n)
    return not bad, f"n=2..6 give n reflections, all shift-compatible" if not bad else f"failed for n={bad}"


def _z2_pair():
    rep = enumerate_maps(catalog("cyclic:2").obj, filter="reflections")
    got = sorted(rep.reflections)
    return got == [(0, 1), (1, 0)], f"reflections = {got}"


def _phi_all():
    r = catalog("phi:3").obj
    ok = sum(bool(check_reflection(r, PointMap(r.carrier, img)))
             for img in product(range(3), repeat=3))
    return ok == 27, f"{ok}/27 maps are reflections"


def _equivariant_are_reflections():
    parts, ok = [], True
    for brace in catalog_braces(max_size=4):
        r = yb_from_brace(brace)
        eq = equivariant_maps(brace)
        good = sum(bool(check_reflection(r, k)) for k in eq)
        ok &= good == len(eq)
        parts.append(f"{brace.name}:{good}/{len(eq)}")
    return ok, ", ".join(parts)


def _nearring():
    brace = catalog("z4adj").obj
    E = np.array([k.image for k in equivariant_maps(brace)])  # carrier is 0..3
    add, neg = brace.add, brace.neg
    keys = {tuple(row) for row in E.tolist()}
    m = len(E)
    f, g = E[:, None, :], E[None, :, :]
    plus = add[f, g].reshape(-1, 4)
    comp = np.take_along_axis(np.broadcast_to(f, (m, m, 4)), np.broadcast_to(g, (m, m, 4)),
                              axis=2).reshape(-1, 4)
    closed = all(tuple(row) in keys for row in np.vstack([plus, comp, neg[E]]).tolist())
    a, b, c = E[:, None, None, :], E[None, :, None, :], E[None, None, :, :]
    add_assoc = np.array_equal(add[add[a, b], c], add[a, add[b, c]])
    comp_assoc = all(np.array_equal(E[i][E[j][E[k]]], E[i][E[j]][E[k]])
                     for i in range(m) for j in range(m) for k in range(m))
    # right distributivity: (f + g)∘h = f∘h + g∘h
    fh = np.take_along_axis(np.broadcast_to(a, (m, m, m, 4)), np.broadcast_to(c, (m, m, m, 4)), axis=3)
    gh = np.take_along_axis(np.broadcast_to(b, (m, m, m, 4)), np.broadcast_to(c, (m, m, m, 4)), axis=3)
    fg = np.broadcast_to(add[a, b], (m, m, m, 4))
    right = np.array_equal(np.take_along_axis(fg, np.broadcast_to(c, (m, m, m, 4)), axis=3), add[fh, gh])
    zero, ident = np.zeros(4, dtype=np.int64), np.arange(4)
    units = (tuple(zero) in keys and tuple(ident) in keys
             and all(np.array_equal(add[zero, e], e) and np.array_equal(ident[e], e)
                     and np.array_equal(e[ident], e) for e in E))
    ok = closed and add_assoc and comp_assoc and right and units
    return ok, (f"{m} equivariant maps; closed={closed}, assoc(+)={add_assoc}, "
                f"assoc(∘)={comp_assoc}, right-distributive={right}, units={units}")


def _compose_power(f: PointMap, g: PointMap, m: int) -> tuple:
    h = tuple(f(g(x)) for x in f.carrier)
    out = tuple(f.carrier)
    for _ in range(m):
        out = tuple(h[f.carrier.index(x)] for x in out)
    return out


def _families():
    B = catalog("z4adj").obj
    r = yb_from_brace(B)
    k1, k2 = family(B, "k1", c=1), family(B, "k2", c=1)
    ok = k1.image == (0, 3, 2, 1) and k2.image == (2, 1, 0, 3)
    ok &= is_equivariant(r, k1) and is_equivariant(r, k2)
    for m in (1, 2, 3):
        ok &= family(B, "tilde_m", c=1, m=m).image == _compose_power(k1, k2, m)
        ok &= family(B, "hat_m", c=1, m=m).image == _compose_power(k2, k1, m)
    for m in (1, 2):
        for n in range(-2, 3):
            want = tuple(B.sum([B.multiple(m, k1(x)), B.multiple(m, k2(x)), B.multiple(n, x)])
                         for x in range(4))
            ok &= family(B, "l_mn", c=1, m=m, n=n).image == want
    return ok, f"k1={k1.image}, k2={k2.image}; tilde/hat m=1..3, l_mn m=1..2 n=-2..2"


def _two_torsion_iff():
    checked, bad = 0, []
    for brace in catalog_braces():
        r = yb_from_brace(brace)
        for c in brace.center():
            cond, _ = check_two_torsion_condition(brace, c)
            k2 = family(brace, "k2", c=c, force=True)
            checked += 1
            if is_equivariant(r, k2) != cond.ok:
                bad.append((brace.name, c))
    return not bad, f"{checked} (brace, central c) pairs agree" if not bad else f"mismatch at {bad}"


def _factorizable():
    ring = catalog("ut3ring").obj
    S, I, J = ut_span(3, ["e12"]), ut_span(3, ["e23", "e13"]), ut_span(3, ["e13"])
    fac = verify_factorization(ring, S, I)
    brace = odot_brace(fac)
    r = yb_from_brace(brace)
    flags = classify(r)
    a = lambda x: x & 1
    b = lambda x: (x >> 1) & 1
    kc = PointMap.from_function(range(8), lambda x: x ^ (4 * (a(x) * b(x))))
    lemma = check_coset_lemma(fac, J, kc)
    g = PointMap.from_function(range(8), lambda x: 2 * b(x))
    k = make_ring_reflection(fac, PointMap.identity(range(8)), g, "k2", "ideal", J=J)
    refl = check_reflection(r, k)
    ok = (flags["involutive"] and flags["nondegenerate"] and lemma.ok and refl.ok
          and not k.is_identity and k(3) == 7)
    return ok, (f"⊙-brace valid, r involutive={flags['involutive']} nondegenerate="
                f"{flags['nondegenerate']}, coset lemma={lemma.ok}, k2={k.image} reflection={refl.ok}")


def _paramdep():
    B = catalog("z4adj").obj
    r = yb_from_brace(B)
    k1 = family(B, "k1", c=1)
    R, K = linearize_r(r), linearize_point_map(k1)
    in_socle = B.circ(1, 1) in socle(B, "left") and is_involutive_map(k1)
    refl = check_param_reflection(R, K)
    ybe = check_param_ybe(R)
    ok = in_socle and refl.identity and ybe.identity and refl.degree_ok and ybe.degree_ok
    return ok, (f"reflection {refl.dim}x{refl.dim} identity={refl.identity} degrees={refl.degrees}; "
                f"YBE {ybe.dim}x{ybe.dim} identity={ybe.identity}")


def _brace_identities():
    bad = []
    for B in catalog_braces(max_size=8):
        n = B.size
        add, mul, neg = B.add, B.mul, B.neg
        x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        sub = lambda p, q: add[p, neg[q]]
        if not np.array_equal(sub(mul[z, sub(x, y)], z), sub(mul[z, x], mul[z, y])):
            bad.append((B.name, "z∘(x−y)−z"))
        X, Y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        two_x = add[X, X]
        if not np.array_equal(add[mul[X, Y], mul[X, neg[Y]]], two_x):
            bad.append((B.name, "x∘y + x∘(−y) = 2x"))
        for length in (1, 2, 3):
            for ys in product(range(n), repeat=length):
                for xv in range(n):
                    lhs = B.circ(xv, B.sum(ys))
                    rhs = B.minus(B.sum(B.circ(xv, v) for v in ys), B.multiple(length - 1, xv))
                    if lhs != rhs:
                        bad.append((B.name, "x∘(Σy) identity"))
                        break
        for k in range(1, n + 1):
            for xv, yv in product(range(n), repeat=2):
                xy = B.circ(xv, yv)
                if B.circ(xv, B.multiple(k, yv)) != B.minus(B.multiple(k, xy), B.multiple(k - 1, xv)):
                    bad.append((B.name, "x∘(ny)"))
                if B.circ(xv, B.multiple(-k, yv)) != B.minus(B.multiple(k + 1, xv), B.multiple(k, xy)):
                    bad.append((B.name, "x∘(−ny)"))
        if not check_sigma_identities(B):
            bad.append((B.name, "σ identities"))
        fixed = tuple(int(v) for v in np.flatnonzero((B.sigma_table == np.arange(n)[None, :]).all(axis=0)))
        if fixed != socle(B, "opposite"):
            bad.append((B.name, "socle fixpoints"))
    names = [B.name for B in catalog_braces(max_size=8)]
    return not bad, f"all identities hold on {names}" if not bad else f"failures: {sorted(set(bad))}"


CRITERIA = [
    (1, "cyclic Z_n has exactly n reflections", _cyclic_counts, 10.0),
    (2, "Z_2 reflections are id and the transposition", _z2_pair, 1.0),
    (3, "every map is a reflection of the phi solution", _phi_all, 1.0),
    (4, "equivariant maps are reflections (|B| <= 4)", _equivariant_are_reflections, 30.0),
    (5, "near-ring laws of equivariant maps on Z_4", _nearring, 30.0),
    (6, "reflection families on Z_4 with c = 1", _families, 5.0),
    (7, "k2 equivariant iff two-torsion condition", _two_torsion_iff, 30.0),
    (8, "factorized 3x3 upper-triangular ring", _factorizable, 10.0),
    (9, "parameter-dependent identities on Z_4", _paramdep, 60.0),
    (10, "brace identity suite on the catalog", _brace_identities, 30.0),
]


def run_criterion(number: int) -> CriterionResult:
    num, name, fn, limit = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported with its cause
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        ok, detail = False, detail + f"; exceeded {limit:g}s"
    return CriterionResult(num, name, bool(ok), detail, elapsed, limit)


def run_all() -> list[CriterionResult]:
    return [run_criterion(n) for n, *_ in CRITERIA]
