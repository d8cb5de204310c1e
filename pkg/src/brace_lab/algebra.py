"""Finite nonunital rings and left braces as validated Cayley tables.

Elements are the integers ``0..n-1`` and the (shared) identity is always 0.
Tables are read-only ``numpy`` arrays so that whole-table axiom checks can be
vectorised; scalar helpers go through cached Python lists, which is much
faster than indexing numpy arrays one element at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import AxiomError, NotRadical, TableError, TheoremViolation

LEFT = "left"
RIGHT = "right"


class Verdict(NamedTuple):
    """Outcome of an exhaustive check: ``ok`` plus the first counterexample."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def first_true(mask: np.ndarray) -> tuple | None:
    """Lexicographically least index at which ``mask`` is true."""
    flat = np.flatnonzero(mask.ravel())
    if flat.size == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(flat[0], mask.shape))


def as_table(table, name: str = "table", size: int | None = None) -> np.ndarray:
    try:
        raw = np.asarray(table)
    except ValueError as exc:  # ragged nested lists
        raise TableError(f"{name}: ragged table") from exc
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] == 0:
        raise TableError(f"{name}: expected a non-empty square table, got shape {raw.shape}")
    if raw.dtype.kind not in "iu":
        raise TableError(f"{name}: entries must be integers, got dtype {raw.dtype}")
    n = raw.shape[0]
    if size is not None and n != size:
        raise TableError(f"{name}: expected size {size}, got {n}")
    bad = first_true((raw < 0) | (raw >= n))
    if bad is not None:
        raise TableError(f"{name}: entry {raw[bad]} at {bad} out of range 0..{n - 1}", bad)
    arr = raw.astype(np.int64)
    arr.setflags(write=False)
    return arr


def normalize_subset(members: Iterable[int] | None, size: int) -> tuple[int, ...]:
    """Sorted, duplicate-free tuple of valid indices; ``None`` means everything."""
    if members is None:
        return tuple(range(size))
    out = sorted(set(int(m) for m in members))
    if not out:
        raise TableError("subset must be non-empty")
    if out[0] < 0 or out[-1] >= size:
        raise TableError(f"subset entries must lie in 0..{size - 1}", tuple(out))
    return tuple(out)


def _readonly(arr) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


# -- group-table checks -----------------------------------------------------

def _identity_of(op: np.ndarray) -> int | None:
    idx = np.arange(op.shape[0])
    for e in range(op.shape[0]):
        if np.array_equal(op[e], idx) and np.array_equal(op[:, e], idx):
            return e
    return None


def _associativity_witness(op: np.ndarray) -> tuple | None:
    idx = np.arange(op.shape[0])
    lhs = op[op[:, :, None], idx[None, None, :]]
    rhs = op[idx[:, None, None], op[None, :, :]]
    return first_true(lhs != rhs)


def _inverse_witness(op: np.ndarray, e: int) -> tuple | None:
    missing = ~(op == e).any(axis=1)
    return first_true(missing)


def _inverse_table(op: np.ndarray, e: int) -> np.ndarray:
    return _readonly(np.argmax(op == e, axis=1))


def _group_failure(op: np.ndarray, prefix: str, abelian: bool, identity: int | None):
    """First failing group axiom as ``(axiom, witness)`` or ``None``.

    ``identity`` pins the identity element; ``None`` searches for one.
    """
    n = op.shape[0]
    if identity is None:
        e = _identity_of(op)
        if e is None:
            return f"{prefix} identity", None
    else:
        e = identity
        idx = np.arange(n)
        bad = first_true((op[e] != idx) | (op[:, e] != idx))
        if bad is not None:
            return f"{prefix} identity", bad
    w = _associativity_witness(op)
    if w is not None:
        return f"{prefix} associativity", w
    if abelian:
        w = first_true(op != op.T)
        if w is not None:
            return f"{prefix} commutativity", w
    w = _inverse_witness(op, e)
    if w is not None:
        return f"{prefix} inverse", w
    return None


# -- braces -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteBrace:
    """A finite left (or right) brace on ``0..n-1`` with identity 0.

    Build one through :func:`check_brace_axioms` or :meth:`from_tables`; the
    bare constructor does not validate.
    """

    add: np.ndarray
    mul: np.ndarray
    side: str = LEFT
    name: str = ""
    labels: tuple[str, ...] | None = field(default=None, repr=False)

    @classmethod
    def from_tables(cls, add, mul, side: str = LEFT, name: str = "", labels=None) -> "FiniteBrace":
        report = check_brace_axioms(add, mul, side=side, name=name, labels=labels)
        if not report.ok:
            raise AxiomError(report.axiom, report.witness)
        return report.brace

    def __eq__(self, other):
        if not isinstance(other, FiniteBrace):
            return NotImplemented
        return (self.side == other.side and np.array_equal(self.add, other.add)
                and np.array_equal(self.mul, other.mul))

    __hash__ = object.__hash__

    @property
    def size(self) -> int:
        return self.add.shape[0]

    @property
    def zero(self) -> int:
        return 0

    @cached_property
    def neg(self) -> np.ndarray:
        return _inverse_table(self.add, 0)

    @cached_property
    def inv(self) -> np.ndarray:
        return _inverse_table(self.mul, 0)

    @cached_property
    def _lists(self):
        return self.add.tolist(), self.mul.tolist(), self.neg.tolist(), self.inv.tolist()

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    # scalar operations
    def plus(self, x: int, y: int) -> int:
        return self._lists[0][x][y]

    def negate(self, x: int) -> int:
        return self._lists[2][x]

    def minus(self, x: int, y: int) -> int:
        a, _, ng, _ = self._lists
        return a[x][ng[y]]

    def circ(self, x: int, y: int) -> int:
        return self._lists[1][x][y]

    def inverse(self, x: int) -> int:
        return self._lists[3][x]

    def multiple(self, k: int, x: int) -> int:
        """The integer multiple ``k x`` in the additive group."""
        a = self._lists[0]
        step = x if k >= 0 else self.negate(x)
        acc = 0
        for _ in range(abs(k)):
            acc = a[acc][step]
        return acc

    def power(self, x: int, j: int) -> int:
        """``x`` to the ``j``-th power in the multiplicative group (``j`` may be negative)."""
        m = self._lists[1]
        step = x if j >= 0 else self.inverse(x)
        acc = 0
        for _ in range(abs(j)):
            acc = m[acc][step]
        return acc

    def sum(self, xs: Iterable[int]) -> int:
        a = self._lists[0]
        acc = 0
        for x in xs:
            acc = a[acc][x]
        return acc

    def star(self, x: int, y: int) -> int:
        return self.minus(self.minus(self.circ(x, y), x), y)

    def sigma(self, x: int, y: int) -> int:
        return self._lists[0][self._lists[1][x][y]][self._lists[2][x]]

    def tau(self, y: int, x: int) -> int:
        t = self.inverse(self.sigma(x, y))
        return self.minus(self.circ(t, x), t)

    # whole tables
    @cached_property
    def star_table(self) -> np.ndarray:
        a, ng = self.add, self.neg
        return _readonly(a[a[self.mul, ng[:, None]], ng[None, :]])

    @cached_property
    def sigma_table(self) -> np.ndarray:
        """``sigma_table[x, y] = x∘y - x``."""
        return _readonly(self.add[self.mul, self.neg[:, None]])

    @cached_property
    def tau_table(self) -> np.ndarray:
        """``tau_table[y, x] = τ_y(x)`` (outer index y)."""
        t = self.inv[self.sigma_table]  # t[x, y]
        xs = np.arange(self.size)[:, None]
        by_xy = self.add[self.mul[t, xs], self.neg[t]]
        return _readonly(by_xy.T)

    def is_central(self, c: int) -> bool:
        return bool(np.array_equal(self.mul[c], self.mul[:, c]))

    def center(self) -> tuple[int, ...]:
        """Center of the multiplicative group."""
        return tuple(int(c) for c in np.flatnonzero((self.mul == self.mul.T).all(axis=1)))

    @cached_property
    def is_trivial(self) -> bool:
        return bool(np.array_equal(self.add, self.mul))

    @cached_property
    def is_two_sided(self) -> bool:
        return brace_law_witness(self.add, self.mul, self.neg, LEFT) is None and \
            brace_law_witness(self.add, self.mul, self.neg, RIGHT) is None

    def is_additive_subgroup(self, members: Sequence[int]) -> bool:
        s = set(members)
        if 0 not in s:
            return False
        return all(self.negate(x) in s for x in s) and all(self.plus(x, y) in s for x in s for y in s)


def brace_law_witness(add: np.ndarray, mul: np.ndarray, neg: np.ndarray, side: str) -> tuple | None:
    idx = np.arange(add.shape[0])
    x = idx[:, None, None]
    y = idx[None, :, None]
    z = idx[None, None, :]
    if side == LEFT:
        lhs = mul[x, add[y, z]]
        rhs = add[add[mul[x, y], mul[x, z]], neg[x]]
    else:
        lhs = mul[add[x, y], z]
        rhs = add[add[mul[x, z], mul[y, z]], neg[z]]
    return first_true(lhs != rhs)


@dataclass
class AxiomReport:
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    brace: FiniteBrace | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"valid": self.ok, "axiom": self.axiom,
                "witness": list(self.witness) if self.witness is not None else None}


def check_brace_axioms(add, mul, side: str = LEFT, name: str = "", labels=None) -> AxiomReport:
    """Validate two Cayley tables as a brace.

    Axioms are tested in a fixed order and the first failure is reported with
    its lexicographically least witness. Malformed tables raise
    :class:`TableError` instead of producing a report.
    """
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    add = as_table(add, "add")
    mul = as_table(mul, "mul", size=add.shape[0])
    fail = _group_failure(add, "additive", abelian=True, identity=0)
    if fail:
        return AxiomReport(False, *fail)
    fail = _group_failure(mul, "multiplicative", abelian=False, identity=None)
    if fail:
        return AxiomReport(False, *fail)
    neg = _inverse_table(add, 0)
    w = brace_law_witness(add, mul, neg, side)
    if w is not None:
        return AxiomReport(False, f"{side} brace law", w)
    e = _identity_of(mul)
    if e != 0:
        # cannot happen once the brace law holds: x∘0 = x∘0 + x∘0 - x forces x∘0 = x
        return AxiomReport(False, "identities coincide", (e,))
    brace = FiniteBrace(add, mul, side=side, name=name, labels=tuple(labels) if labels else None)
    return AxiomReport(True, brace=brace)


def relabel_identity_to_zero(add, mul=None):
    """Swap indices so that the additive identity becomes 0.

    Returns ``(add, mul, perm)`` where ``perm[old] = new``.
    """
    add = as_table(add, "add")
    n = add.shape[0]
    e = None
    for cand in range(n):
        if np.array_equal(add[cand], np.arange(n)):
            e = cand
            break
    if e is None:
        raise AxiomError("additive identity", None)
    perm = np.arange(n)
    perm[[0, e]] = perm[[e, 0]]

    def remap(t):
        t = as_table(t, size=n)
        out = np.empty_like(t)
        out[np.ix_(perm, perm)] = perm[t]
        return out

    return remap(add), (remap(mul) if mul is not None else None), perm


# -- rings --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite nonunital ring ``(N, +, ∗)`` with zero at index 0."""

    add: np.ndarray
    mul: np.ndarray
    name: str = ""
    labels: tuple[str, ...] | None = field(default=None, repr=False)

    @classmethod
    def from_tables(cls, add, mul, name: str = "", labels=None) -> "FiniteRing":
        add = as_table(add, "add")
        mul = as_table(mul, "mul", size=add.shape[0])
        fail = ring_axiom_failure(add, mul)
        if fail:
            raise AxiomError(*fail)
        return cls(add, mul, name=name, labels=tuple(labels) if labels else None)

    @classmethod
    def from_functions(cls, elements: Sequence, plus, times, name: str = "", labels=None) -> "FiniteRing":
        """Tabulate a ring given as Python callables; ``elements[0]`` must be zero."""
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        add = [[index[plus(a, b)] for b in elements] for a in elements]
        mul = [[index[times(a, b)] for b in elements] for a in elements]
        if labels is None:
            labels = [str(e) for e in elements]
        return cls.from_tables(add, mul, name=name, labels=labels)

    def __eq__(self, other):
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return np.array_equal(self.add, other.add) and np.array_equal(self.mul, other.mul)

    __hash__ = object.__hash__

    @property
    def size(self) -> int:
        return self.add.shape[0]

    @property
    def zero(self) -> int:
        return 0

    @cached_property
    def neg(self) -> np.ndarray:
        return _inverse_table(self.add, 0)

    @cached_property
    def _lists(self):
        return self.add.tolist(), self.mul.tolist(), self.neg.tolist()

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def plus(self, x: int, y: int) -> int:
        return self._lists[0][x][y]

    def negate(self, x: int) -> int:
        return self._lists[2][x]

    def minus(self, x: int, y: int) -> int:
        return self._lists[0][x][self._lists[2][y]]

    def times(self, x: int, y: int) -> int:
        return self._lists[1][x][y]

    def circ(self, x: int, y: int) -> int:
        """Adjoint product ``x + y + x∗y``."""
        a = self._lists[0]
        return a[a[x][y]][self._lists[1][x][y]]

    def product(self, xs: Sequence[int]) -> int:
        m = self._lists[1]
        acc = xs[0]
        for x in xs[1:]:
            acc = m[acc][x]
        return acc

    def multiple(self, k: int, x: int) -> int:
        a = self._lists[0]
        step = x if k >= 0 else self.negate(x)
        acc = 0
        for _ in range(abs(k)):
            acc = a[acc][step]
        return acc

    @cached_property
    def circ_table(self) -> np.ndarray:
        return _readonly(self.add[self.add, self.mul])

    @cached_property
    def nilpotency_index(self) -> int | None:
        """Least ``m`` such that every ``m``-fold product vanishes, else ``None``.

        Iterates the descending chain of product sets N ⊇ N∗N ⊇ ... until it
        reaches {0} or stabilises.
        """
        m = self._lists[1]
        current = set(range(self.size))
        k = 1
        while current != {0}:
            nxt = {m[p][b] for p in current for b in range(self.size)}
            if nxt == current:
                return None
            current = nxt
            k += 1
        return k

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_index is not None

    def adjoint_inverse(self, x: int) -> int:
        """Inverse of ``x`` under ``∘``.

        For nilpotent rings this is the truncated series ``Σ_{n≥1} (-1)^n x^n``;
        otherwise the table is searched.
        """
        nil = self.nilpotency_index
        if nil is not None:
            acc, pw = 0, x
            for n in range(1, nil):
                acc = self.plus(acc, pw if n % 2 == 0 else self.negate(pw))
                pw = self.times(pw, x)
            return acc
        hits = np.flatnonzero(self.circ_table[x] == 0)
        if hits.size == 0:
            raise NotRadical(f"{self.label(x)} has no adjoint inverse", (x,))
        return int(hits[0])

    def is_additive_subgroup(self, members: Sequence[int]) -> bool:
        s = set(members)
        if 0 not in s:
            return False
        return all(self.negate(x) in s for x in s) and all(self.plus(x, y) in s for x in s for y in s)


def ring_axiom_failure(add: np.ndarray, mul: np.ndarray):
    fail = _group_failure(add, "additive", abelian=True, identity=0)
    if fail:
        return fail
    w = _associativity_witness(mul)
    if w is not None:
        return "multiplicative associativity", w
    idx = np.arange(add.shape[0])
    x, y, z = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    w = first_true(mul[x, add[y, z]] != add[mul[x, y], mul[x, z]])
    if w is not None:
        return "left distributivity", w
    w = first_true(mul[add[x, y], z] != add[mul[x, z], mul[y, z]])
    if w is not None:
        return "right distributivity", w
    return None


def check_ring_axioms(add, mul) -> AxiomReport:
    add = as_table(add, "add")
    mul = as_table(mul, "mul", size=add.shape[0])
    fail = ring_axiom_failure(add, mul)
    if fail:
        return AxiomReport(False, *fail)
    return AxiomReport(True)


# -- structural maps ----------------------------------------------------------

def adjoint_brace(ring: FiniteRing) -> FiniteBrace:
    """Brace ``(N, +, ∘)`` with ``x∘y = x + y + x∗y``; needs a radical ring."""
    circ = ring.circ_table
    missing = first_true(~(circ == 0).any(axis=1))
    if missing is not None:
        x = missing[0]
        raise NotRadical(f"{ring.label(x)} has no adjoint inverse", missing)
    report = check_brace_axioms(ring.add, circ, name=f"adj({ring.name})" if ring.name else "",
                                labels=ring.labels)
    if not report.ok:
        raise TheoremViolation(f"adjoint brace fails {report.axiom}", report.witness)
    return report.brace


def star(brace: FiniteBrace, x: int, y: int) -> int:
    """``x⋆y = x∘y - x - y``."""
    return brace.star(x, y)


def star_associativity_witness(brace: FiniteBrace) -> tuple | None:
    s = brace.star_table
    return _associativity_witness(s)


def socle(brace: FiniteBrace, side: str = "left") -> tuple[int, ...]:
    """``side='left'``: {a : a∘b = a+b ∀b}; ``side='opposite'``: {a : b∘a = b+a ∀b}."""
    same = brace.mul == brace.add
    if side == "left":
        rows = same.all(axis=1)
    elif side == "opposite":
        rows = same.all(axis=0)
    else:
        raise ValueError("side must be 'left' or 'opposite'")
    return tuple(int(a) for a in np.flatnonzero(rows))


def opposite_brace(brace: FiniteBrace) -> FiniteBrace:
    side = RIGHT if brace.side == LEFT else LEFT
    mul = _readonly(brace.mul.T)
    w = brace_law_witness(brace.add, mul, brace.neg, side)
    if w is not None:
        raise TheoremViolation(f"opposite fails the {side} brace law", w)
    name = f"op({brace.name})" if brace.name else ""
    return FiniteBrace(brace.add, mul, side=side, name=name, labels=brace.labels)


def verify_subbrace(brace: FiniteBrace, members: Iterable[int]) -> bool:
    """True iff X is an additive subgroup with r(X, X) ⊆ X.

    When true, X is also checked to be closed under ∘ and ∘-inverses, as
    such an X is always a subbrace.
    """
    xs = normalize_subset(members, brace.size)
    s = set(xs)
    if not brace.is_additive_subgroup(xs):
        return False
    sig, tau = brace.sigma_table, brace.tau_table
    for x in xs:
        for y in xs:
            if int(sig[x, y]) not in s or int(tau[y, x]) not in s:
                return False
    for x in xs:
        if brace.inverse(x) not in s:
            raise TheoremViolation("subgroup closed under r but not under ∘-inverses", (x,))
        for y in xs:
            if brace.circ(x, y) not in s:
                raise TheoremViolation("subgroup closed under r but not under ∘", (x, y))
    return True
