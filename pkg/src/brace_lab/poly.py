"""Exact integer polynomials in two variables u, v and matrices over them.

A :class:`PolyMatrix` is stored by monomial: ``{(i, j): C}`` where ``C`` is an
integer matrix holding the coefficient of u^i v^j in every entry. Products
are then sums of ordinary integer matrix products, which keeps the 64x64
checks fast while staying exact. Coefficient matrices use int64 when a bound
on the result rules out overflow and Python-int object arrays otherwise.
"""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Mapping

import numpy as np

Monomial = tuple[int, int]
_I64_SAFE = 2 ** 62


class Poly2:
    """Sparse polynomial in u, v with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms = {tuple(k): int(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def linear(cls, a: int, b: int, c: int = 0) -> "Poly2":
        """``a u + b v + c``."""
        return cls({(1, 0): a, (0, 1): b, (0, 0): c})

    @classmethod
    def parse(cls, text: str) -> "Poly2":
        """Parse an integer linear form such as ``"u+v"``, ``"u-v"``, ``"2u-3"`` or ``"0"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty linear form")
        if not re.fullmatch(r"([+-]?(\d*[uv]|\d+))+", s):
            raise ValueError(f"not an integer linear form in u, v: {text!r}")
        coef = {"u": 0, "v": 0, "": 0}
        for sign, num, var in re.findall(r"([+-]?)(\d*)([uv]?)", s):
            if not num and not var:
                continue
            val = int(num) if num else 1
            coef[var] += -val if sign == "-" else val
        return cls.linear(coef["u"], coef["v"], coef[""])

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out: dict = defaultdict(int)
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                out[i + k, j + l] += c * d
        return Poly2(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.terms == _as_poly(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, u, v):
        return sum(c * u ** i * v ** j for (i, j), c in self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree_u(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    @property
    def degree_v(self) -> int:
        return max((j for _, j in self.terms), default=0)

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=0)

    def to_json(self) -> list[list[int]]:
        """``[[deg_u, deg_v, coef], ...]`` sorted by monomial."""
        return [[i, j, c] for (i, j), c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "Poly2(0)"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            mono = "".join(f"{x}^{e}" if e > 1 else x for x, e in (("u", i), ("v", j)) if e)
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return "Poly2(" + " + ".join(parts) + ")"


def _as_poly(x) -> Poly2:
    if isinstance(x, Poly2):
        return x
    if isinstance(x, (int, np.integer)):
        return Poly2.const(int(x))
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


def _bound(m: np.ndarray) -> int:
    return int(np.abs(m).max()) if m.size else 0


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == object or b.dtype == object or _bound(a) * _bound(b) * a.shape[1] >= _I64_SAFE:
        return np.dot(a.astype(object), b.astype(object))
    return a @ b


def _add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == object or b.dtype == object or _bound(a) + _bound(b) >= _I64_SAFE:
        return a.astype(object) + b.astype(object)
    return a + b


class PolyMatrix:
    """Square matrix with :class:`Poly2` entries, stored by monomial."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Mapping[Monomial, np.ndarray] | None = None):
        self.dim = dim
        self.coeffs: dict[Monomial, np.ndarray] = {}
        for k, m in (coeffs or {}).items():
            m = np.asarray(m)
            if m.shape != (dim, dim):
                raise ValueError(f"coefficient matrix has shape {m.shape}, expected {(dim, dim)}")
            if m.dtype != object:
                m = m.astype(np.int64)
            if np.any(m != 0):
                self.coeffs[tuple(k)] = m

    @classmethod
    def identity(cls, dim: int) -> "PolyMatrix":
        return cls(dim, {(0, 0): np.eye(dim, dtype=np.int64)})

    @classmethod
    def constant(cls, matrix) -> "PolyMatrix":
        m = np.asarray(matrix)
        return cls(m.shape[0], {(0, 0): m})

    @classmethod
    def zero(cls, dim: int) -> "PolyMatrix":
        return cls(dim)

    @classmethod
    def from_entries(cls, entries) -> "PolyMatrix":
        """Build from a nested list of :class:`Poly2` (or ints)."""
        dim = len(entries)
        out: dict = {}
        for i, row in enumerate(entries):
            for j, p in enumerate(row):
                for mono, c in _as_poly(p).terms.items():
                    out.setdefault(mono, np.zeros((dim, dim), dtype=object))[i, j] = c
        return cls(dim, out)

    def _check(self, other: "PolyMatrix"):
        if not isinstance(other, PolyMatrix):
            raise TypeError("expected a PolyMatrix")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        out = dict(self.coeffs)
        for k, m in other.coeffs.items():
            out[k] = _add(out[k], m) if k in out else m
        return PolyMatrix(self.dim, out)

    def __neg__(self):
        return PolyMatrix(self.dim, {k: -m for k, m in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        out: dict = {}
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                key = (i + k, j + l)
                prod = _matmul(a, b)
                out[key] = _add(out[key], prod) if key in out else prod
        return PolyMatrix(self.dim, out)

    def scale(self, p: Poly2) -> "PolyMatrix":
        """Multiply every entry by the polynomial ``p``."""
        out: dict = {}
        for (i, j), m in self.coeffs.items():
            for (k, l), c in _as_poly(p).terms.items():
                key = (i + k, j + l)
                term = m * c
                out[key] = _add(out[key], term) if key in out else term
        return PolyMatrix(self.dim, out)

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        """Tensor product; basis of the result is row-major ``(i, j) -> i*dim_other + j``."""
        out: dict = {}
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                key = (i + k, j + l)
                prod = np.kron(a, b)
                out[key] = _add(out[key], prod) if key in out else prod
        return PolyMatrix(self.dim * other.dim, out)

    def entry(self, i: int, j: int) -> Poly2:
        return Poly2({k: int(m[i, j]) for k, m in self.coeffs.items()})

    def evaluate(self, u: int, v: int) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=object)
        for (i, j), m in self.coeffs.items():
            out = out + m.astype(object) * (u ** i * v ** j)
        return out

    def first_mismatch(self, other: "PolyMatrix") -> tuple[int, int] | None:
        """Row-major least entry where the two matrices differ."""
        self._check(other)
        diff = np.zeros((self.dim, self.dim), dtype=bool)
        for k in set(self.coeffs) | set(other.coeffs):
            a = self.coeffs.get(k)
            b = other.coeffs.get(k)
            if a is None:
                diff |= b != 0
            elif b is None:
                diff |= a != 0
            else:
                diff |= a != b
        flat = np.flatnonzero(diff.ravel())
        if flat.size == 0:
            return None
        return divmod(int(flat[0]), self.dim)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix) or other.dim != self.dim:
            return False
        return self.first_mismatch(other) is None

    __hash__ = None

    @property
    def degree_u(self) -> int:
        return max((i for i, _ in self.coeffs), default=0)

    @property
    def degree_v(self) -> int:
        return max((j for _, j in self.coeffs), default=0)

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.coeffs), default=0)

    def __repr__(self):
        return f"PolyMatrix(dim={self.dim}, monomials={sorted(self.coeffs)})"
