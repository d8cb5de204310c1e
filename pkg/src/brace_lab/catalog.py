"""Bundled example rings, braces and set-theoretic solutions.

Names accepted by :func:`catalog`:

=============  ==============  ==========================================
name           kind            object
=============  ==============  ==========================================
trivial:n      brace           Z_n with x∘y = x+y
zero:n         ring            Z_n with x∗y = 0
zn:n:k         ring            Z_n with x∗y = k x y
z4ring         ring            Z_4 with x∗y = 2xy
z4adj          brace           adjoint brace of z4ring
z8adj          brace           adjoint brace of Z_8 with x∗y = 2xy
t3ring/t3adj   ring/brace      span(t, t²) inside F_2[t]/(t³)
ut3ring        ring            strictly upper triangular 3x3 over F_2
ut3adj         brace           its adjoint brace
ut3:F2         factorization   ut3ring with S={0,e12}, I=span(e23,e13), J={0,e13}
ut3odot        brace           the ⊙-brace of ut3:F2
ut4ring        ring            strictly upper triangular 4x4 over F_2
ut4adj         brace
ut4:F2         factorization   S={0,e12}, I={x12=0}, J=span(e24,e14)
ut4odot        brace
cyclic:n       ybmap           r(x,y) = (y+1, x) on Z_n
phi:n          ybmap           r(x,y) = (φ(y), φ⁻¹(x)), φ = x ↦ x+1
flip:n         ybmap           r(x,y) = (y, x)
onesided8      brace           Z_4 x Z_2, (a,b)∘(p,q) = (a,b) + ((-1)^a p, q + ⌊a/2⌋p)
=============  ==============  ==========================================

Upper triangular matrices are encoded as bit vectors over the positions
ordered by superdiagonal (e12, e23, e34, e13, e24, e14 for 4x4), so for 3x3
the element (a, b, c) = a e12 + b e23 + c e13 has index a + 2b + 4c.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .algebra import FiniteBrace, FiniteRing, adjoint_brace, check_brace_axioms
from .errors import UnknownEntry


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    obj: object
    extras: dict = field(default_factory=dict)


def trivial_brace(n: int) -> FiniteBrace:
    table = [[(x + y) % n for y in range(n)] for x in range(n)]
    return FiniteBrace.from_tables(table, table, name=f"trivial:{n}")


def zn_ring(n: int, k: int) -> FiniteRing:
    add = [[(x + y) % n for y in range(n)] for x in range(n)]
    mul = [[(k * x * y) % n for y in range(n)] for x in range(n)]
    return FiniteRing.from_tables(add, mul, name=f"zn:{n}:{k}")


def t3_ring() -> FiniteRing:
    """Elements a t + b t² with t³ = 0 over F_2; index a + 2b."""
    def times(x, y):
        return (0, x[0] * y[0] % 2)

    elements = [(0, 0), (1, 0), (0, 1), (1, 1)]
    labels = ["0", "t", "t2", "t+t2"]
    return FiniteRing.from_functions(
        elements, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), times,
        name="t3ring", labels=labels)


def ut_positions(dim: int) -> list[tuple[int, int]]:
    """Strictly upper triangular positions (1-based), ordered by superdiagonal."""
    return [(i, i + d) for d in range(1, dim) for i in range(1, dim - d + 1)]


def ut_vector(index: int, dim: int, p: int = 2) -> tuple[int, ...]:
    out = []
    for _ in ut_positions(dim):
        out.append(index % p)
        index //= p
    return tuple(out)


def ut_index(coeffs, p: int = 2) -> int:
    return sum((c % p) * p ** i for i, c in enumerate(coeffs))


def ut_label(index: int, dim: int, p: int = 2) -> str:
    terms = []
    for (i, j), c in zip(ut_positions(dim), ut_vector(index, dim, p)):
        if c:
            terms.append(f"e{i}{j}" if c == 1 else f"{c}e{i}{j}")
    return "+".join(terms) or "0"


def ut_ring(dim: int, p: int = 2) -> FiniteRing:
    """Strictly upper triangular ``dim x dim`` matrices over F_p."""
    pos = ut_positions(dim)
    where = {ij: k for k, ij in enumerate(pos)}
    size = p ** len(pos)
    vecs = [ut_vector(i, dim, p) for i in range(size)]

    def times(x, y):
        out = [0] * len(pos)
        for (i, j), a in zip(pos, x):
            if not a:
                continue
            for (j2, k), b in zip(pos, y):
                if j2 == j and b:
                    out[where[(i, k)]] += a * b
        return ut_index(out, p)

    add = [[ut_index([a + b for a, b in zip(x, y)], p) for y in vecs] for x in vecs]
    mul = [[times(x, y) for y in vecs] for x in vecs]
    labels = [ut_label(i, dim, p) for i in range(size)]
    return FiniteRing.from_tables(add, mul, name=f"ut{dim}ring", labels=labels)


def ut_span(dim: int, names: list[str], p: int = 2) -> tuple[int, ...]:
    """Indices of the F_p-span of the named matrix units (e.g. ``["e23", "e13"]``)."""
    pos = ut_positions(dim)
    slots = [pos.index((int(nm[1]), int(nm[2]))) for nm in names]
    out = set()
    for coeffs in product(range(p), repeat=len(slots)):
        vec = [0] * len(pos)
        for s, c in zip(slots, coeffs):
            vec[s] = c
        out.add(ut_index(vec, p))
    return tuple(sorted(out))


def ut_where(dim: int, pred, p: int = 2) -> tuple[int, ...]:
    """Indices whose coordinate dict ``{"x12": a, ...}`` satisfies ``pred``."""
    pos = ut_positions(dim)
    out = []
    for idx in range(p ** len(pos)):
        coords = {f"x{i}{j}": c for (i, j), c in zip(pos, ut_vector(idx, dim, p))}
        if pred(coords):
            out.append(idx)
    return tuple(out)


def onesided8_brace() -> FiniteBrace:
    """Left brace on Z_4 x Z_2 that is not two-sided; (a, b) has index a + 4b.

    λ_(a,b)(p, q) = ((-1)^a p, q + ⌊a/2⌋ p), and x∘y = x + λ_x(y).
    """
    els = [(a, b) for b in range(2) for a in range(4)]
    idx = {(a, b): a + 4 * b for a, b in els}

    def plus(x, y):
        return ((x[0] + y[0]) % 4, (x[1] + y[1]) % 2)

    def lam(x, y):
        a = x[0]
        return ((-1) ** a * y[0] % 4, (y[1] + (a // 2) * y[0]) % 2)

    add = [[idx[plus(x, y)] for y in els] for x in els]
    mul = [[idx[plus(x, lam(x, y))] for y in els] for x in els]
    labels = [f"({a},{b})" for a, b in els]
    rep = check_brace_axioms(add, mul, name="onesided8", labels=labels)
    return rep.brace


def cyclic_tables(n: int):
    sigma = [[(y + 1) % n for y in range(n)] for _ in range(n)]
    tau = [[x for x in range(n)] for _ in range(n)]
    return sigma, tau


def phi_tables(n: int):
    phi = [(x + 1) % n for x in range(n)]
    phi_inv = [(x - 1) % n for x in range(n)]
    sigma = [[phi[y] for y in range(n)] for _ in range(n)]
    tau = [[phi_inv[x] for x in range(n)] for _ in range(n)]
    return sigma, tau


def flip_tables(n: int):
    ident = [list(range(n)) for _ in range(n)]
    return ident, [row[:] for row in ident]


# -- factorizations ------------------------------------------------------------

def _ut3_parts():
    ring = ut_ring(3)
    S = ut_span(3, ["e12"])
    I = ut_span(3, ["e23", "e13"])
    J = ut_span(3, ["e13"])
    return ring, S, I, J


def _ut4_parts():
    ring = ut_ring(4)
    S = ut_span(4, ["e12"])
    I = ut_where(4, lambda c: c["x12"] == 0)
    J = ut_span(4, ["e24", "e14"])
    return ring, S, I, J


@lru_cache(maxsize=None)
def _build(name: str) -> CatalogEntry:
    from .factorizable import odot_brace, verify_factorization
    from .yang_baxter import custom_yb

    head, _, rest = name.partition(":")
    if head == "trivial" and rest.isdigit():
        return CatalogEntry(name, "brace", trivial_brace(int(rest)))
    if head == "zero" and rest.isdigit():
        return CatalogEntry(name, "ring", zn_ring(int(rest), 0))
    if head == "zn":
        n, k = (int(v) for v in rest.split(":"))
        return CatalogEntry(name, "ring", zn_ring(n, k))
    if name == "z4ring":
        return CatalogEntry(name, "ring", zn_ring(4, 2))
    if name == "z4adj":
        return CatalogEntry(name, "brace", _named(adjoint_brace(zn_ring(4, 2)), name))
    if name == "z8adj":
        return CatalogEntry(name, "brace", _named(adjoint_brace(zn_ring(8, 2)), name))
    if name == "t3ring":
        return CatalogEntry(name, "ring", t3_ring())
    if name == "t3adj":
        return CatalogEntry(name, "brace", _named(adjoint_brace(t3_ring()), name))
    if name in ("ut3ring", "ut4ring"):
        return CatalogEntry(name, "ring", ut_ring(int(name[2])))
    if name in ("ut3adj", "ut4adj"):
        return CatalogEntry(name, "brace", _named(adjoint_brace(ut_ring(int(name[2]))), name))
    if name in ("ut3:F2", "ut3", "ut4:F2", "ut4"):
        ring, S, I, J = _ut3_parts() if name.startswith("ut3") else _ut4_parts()
        fac = verify_factorization(ring, S, I)
        return CatalogEntry(name, "factorization", fac, {"J": J})
    if name in ("ut3odot", "ut4odot"):
        fac = _build(f"{name[:3]}:F2").obj
        return CatalogEntry(name, "brace", _named(odot_brace(fac), name))
    if name == "onesided8":
        return CatalogEntry(name, "brace", onesided8_brace())
    if head in ("cyclic", "phi", "flip") and rest.isdigit():
        n = int(rest)
        sigma, tau = {"cyclic": cyclic_tables, "phi": phi_tables, "flip": flip_tables}[head](n)
        return CatalogEntry(name, "ybmap", custom_yb(sigma, tau, name=name))
    raise UnknownEntry(f"unknown catalog entry {name!r}")


def _named(brace: FiniteBrace, name: str) -> FiniteBrace:
    return FiniteBrace(brace.add, brace.mul, side=brace.side, name=name, labels=brace.labels)


def catalog(name: str) -> CatalogEntry:
    return _build(name)


BRACE_NAMES = ("trivial:2", "trivial:3", "trivial:4", "z4adj", "t3adj", "z8adj",
               "ut3adj", "ut3odot", "onesided8", "ut4adj", "ut4odot")
LISTED = BRACE_NAMES + ("z4ring", "t3ring", "ut3ring", "ut4ring", "ut3:F2", "ut4:F2",
                        "cyclic:4", "phi:3", "flip:3")


def catalog_braces(max_size: int | None = None) -> list[FiniteBrace]:
    """The bundled braces, optionally limited to ``size <= max_size``."""
    out = [catalog(n).obj for n in BRACE_NAMES]
    return [b for b in out if max_size is None or b.size <= max_size]


def revalidate(brace: FiniteBrace) -> bool:
    return check_brace_axioms(np.asarray(brace.add), np.asarray(brace.mul), side=brace.side).ok
