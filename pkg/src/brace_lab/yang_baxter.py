"""Set-theoretic Yang-Baxter maps r(x, y) = (σ_x(y), τ_y(x)).

Tables live on the ground set ``0..n-1``; ``sigma[x, y] = σ_x(y)`` and
``tau[y, x] = τ_y(x)`` (outer index y). Entries off the carrier are -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .algebra import LEFT, FiniteBrace, Verdict, first_true, normalize_subset
from .errors import CarrierMismatch, NotClosed, TableError


@dataclass(frozen=True, eq=False)
class YangBaxterMap:
    size: int
    carrier: tuple[int, ...]
    sigma: np.ndarray
    tau: np.ndarray
    provenance: str = "custom"
    name: str = ""

    @cached_property
    def position(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.carrier)}

    @cached_property
    def local(self) -> tuple[np.ndarray, np.ndarray]:
        """Tables re-indexed by carrier position.

        Returns ``(S, T)`` with ``S[i, j] = pos σ_{c_i}(c_j)`` and
        ``T[i, j] = pos τ_{c_j}(c_i)``, i.e. ``r(i, j) = (S[i, j], T[i, j])``.
        """
        c = np.array(self.carrier)
        lookup = np.full(self.size, -1, dtype=np.int64)
        lookup[c] = np.arange(len(c))
        S = lookup[self.sigma[np.ix_(c, c)]]
        T = lookup[self.tau[np.ix_(c, c)]].T
        S.setflags(write=False)
        T.setflags(write=False)
        return S, T

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return int(self.sigma[x, y]), int(self.tau[y, x])

    @cached_property
    def flags(self) -> dict:
        return classify(self)

    @property
    def involutive(self) -> bool:
        return self.flags["involutive"]

    @property
    def nondegenerate(self) -> bool:
        return self.flags["nondegenerate"]


def _closure_witness(sigma: np.ndarray, tau: np.ndarray, carrier: tuple[int, ...]):
    inside = np.zeros(sigma.shape[0] + 1, dtype=bool)
    inside[list(carrier)] = True
    c = np.array(carrier)
    s = sigma[np.ix_(c, c)]          # [x, y]
    t = tau[np.ix_(c, c)].T          # [x, y] = τ_y(x)
    bad = first_true(~inside[s] | ~inside[t])
    if bad is None:
        return None
    return carrier[bad[0]], carrier[bad[1]]


def _restrict(table: np.ndarray, carrier: tuple[int, ...]) -> np.ndarray:
    out = np.full(table.shape, -1, dtype=np.int64)
    c = np.array(carrier)
    out[np.ix_(c, c)] = table[np.ix_(c, c)]
    out.setflags(write=False)
    return out


def yb_from_brace(brace: FiniteBrace, X: Iterable[int] | None = None) -> YangBaxterMap:
    """Yang-Baxter map of a left brace, restricted to ``X`` (default: all of B).

    Raises :class:`NotClosed` if r does not map X x X into itself.
    """
    if brace.side != LEFT:
        raise ValueError("the Yang-Baxter map is defined for left braces")
    carrier = normalize_subset(X, brace.size)
    sigma, tau = brace.sigma_table, brace.tau_table
    w = _closure_witness(sigma, tau, carrier)
    if w is not None:
        raise NotClosed(f"r leaves X x X at {w}", w)
    r = YangBaxterMap(brace.size, carrier, _restrict(sigma, carrier), _restrict(tau, carrier),
                      provenance="from-brace", name=brace.name)
    if len(carrier) == brace.size:
        # whole brace: involutive and nondegenerate by construction
        r.__dict__["flags"] = {"involutive": True, "nondegenerate": True}
    return r


def custom_yb(sigma, tau, X: Iterable[int] | None = None, name: str = "") -> YangBaxterMap:
    """Wrap hand-made tables without asserting the braid relation."""
    try:
        s = np.asarray(sigma)
        t = np.asarray(tau)
    except ValueError as exc:
        raise TableError("ragged sigma/tau table") from exc
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape != t.shape or s.shape[0] == 0:
        raise TableError(f"sigma/tau must be equal-size square tables, got {s.shape} and {t.shape}")
    if s.dtype.kind not in "iu" or t.dtype.kind not in "iu":
        raise TableError("sigma/tau entries must be integers")
    n = s.shape[0]
    carrier = normalize_subset(X, n)
    s = s.astype(np.int64)
    t = t.astype(np.int64)
    c = np.array(carrier)
    for tab, nm in ((s, "sigma"), (t, "tau")):
        block = tab[np.ix_(c, c)]
        bad = first_true((block < 0) | (block >= n))
        if bad is not None:
            raise TableError(f"{nm}: entry out of range at {(carrier[bad[0]], carrier[bad[1]])}")
    w = _closure_witness(s, t, carrier)
    if w is not None:
        raise NotClosed(f"r leaves X x X at {w}", w)
    return YangBaxterMap(n, carrier, _restrict(s, carrier), _restrict(t, carrier), name=name)


def _id_r(S, T, a, b, c):
    return a, S[b, c], T[b, c]


def _r_id(S, T, a, b, c):
    return S[a, b], T[a, b], c


def check_ybe(r: YangBaxterMap) -> Verdict:
    """Braid relation on all triples; witness is the least failing (x, y, z)."""
    S, T = r.local
    idx = np.arange(len(r.carrier))
    x, y, z = np.meshgrid(idx, idx, idx, indexing="ij")
    # (id×r)(r×id)(id×r), rightmost factor applied first
    lhs = _id_r(S, T, *_r_id(S, T, *_id_r(S, T, x, y, z)))
    rhs = _r_id(S, T, *_id_r(S, T, *_r_id(S, T, x, y, z)))
    bad = first_true((lhs[0] != rhs[0]) | (lhs[1] != rhs[1]) | (lhs[2] != rhs[2]))
    if bad is None:
        return Verdict(True)
    return Verdict(False, tuple(r.carrier[i] for i in bad))


def classify(r: YangBaxterMap) -> dict:
    S, T = r.local
    m = len(r.carrier)
    s2, t2 = S[S, T], T[S, T]
    ii, jj = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    involutive = bool(np.array_equal(s2, ii) and np.array_equal(t2, jj))
    full = np.arange(m)
    rows_ok = all(np.array_equal(np.sort(S[i]), full) for i in range(m))
    # τ_y as a function of x is column j of T
    cols_ok = all(np.array_equal(np.sort(T[:, j]), full) for j in range(m))
    return {"involutive": involutive, "nondegenerate": rows_ok and cols_ok}


def check_sigma_identities(brace: FiniteBrace, X: Iterable[int] | None = None) -> Verdict:
    """Check on X: σ_x additive, σ_x σ_y = σ_{x∘y}, and σ_x(y) ∘ τ_y(x) = x∘y.

    Witnesses are tagged with the failing identity's name.
    """
    carrier = np.array(yb_from_brace(brace, X).carrier)
    add, mul = brace.add, brace.mul
    sig, tau = brace.sigma_table, brace.tau_table
    x = carrier[:, None, None]
    y = carrier[None, :, None]
    z = carrier[None, None, :]
    bad = first_true(sig[x, add[y, z]] != add[sig[x, y], sig[x, z]])
    if bad is not None:
        return Verdict(False, ("homomorphism",) + tuple(int(carrier[i]) for i in bad))
    bad = first_true(sig[x, sig[y, z]] != sig[mul[x, y], z])
    if bad is not None:
        return Verdict(False, ("composition",) + tuple(int(carrier[i]) for i in bad))
    x2, y2 = carrier[:, None], carrier[None, :]
    bad = first_true(mul[sig[x2, y2], tau[y2, x2]] != mul[x2, y2])
    if bad is not None:
        return Verdict(False, ("sigma-tau",) + tuple(int(carrier[i]) for i in bad))
    return Verdict(True)


def same_carrier(*maps) -> tuple[int, ...]:
    carriers = {m.carrier for m in maps}
    if len(carriers) != 1:
        raise CarrierMismatch("maps live on different carriers")
    return carriers.pop()
