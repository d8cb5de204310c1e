"""JSON interchange for rings, braces, Yang-Baxter maps, point maps and factorizations.

Tables are row-major lists of lists of indices and element 0 is the shared
identity. ``tau`` is written with outer index y, i.e. ``tau[y][x] = τ_y(x)``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import LEFT, FiniteBrace, FiniteRing, relabel_identity_to_zero
from .errors import TableError
from .factorizable import Factorization, verify_factorization
from .reflection import PointMap
from .yang_baxter import YangBaxterMap, custom_yb


def _tolist(table) -> list:
    return np.asarray(table).tolist()


def ring_to_json(ring: FiniteRing) -> dict:
    return {"kind": "ring", "size": ring.size, "add": _tolist(ring.add), "mul": _tolist(ring.mul)}


def brace_to_json(brace: FiniteBrace) -> dict:
    out = {"kind": "brace", "size": brace.size, "add": _tolist(brace.add), "mul": _tolist(brace.mul)}
    if brace.side != LEFT:
        out["side"] = brace.side
    return out


def ybmap_to_json(r: YangBaxterMap) -> dict:
    c = list(r.carrier)
    sigma = [[int(r.sigma[x, y]) for y in range(r.size)] for x in range(r.size)]
    tau = [[int(r.tau[y, x]) for x in range(r.size)] for y in range(r.size)]
    return {"kind": "ybmap", "size": r.size, "carrier": c, "sigma": sigma, "tau": tau}


def pointmap_to_json(k: PointMap) -> dict:
    return k.to_json()


def factorization_to_json(fac: Factorization) -> dict:
    return fac.to_json()


def to_json(obj) -> dict:
    if isinstance(obj, FiniteBrace):
        return brace_to_json(obj)
    if isinstance(obj, FiniteRing):
        return ring_to_json(obj)
    if isinstance(obj, YangBaxterMap):
        return ybmap_to_json(obj)
    if isinstance(obj, PointMap):
        return pointmap_to_json(obj)
    if isinstance(obj, Factorization):
        return factorization_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def tables_from_json(data: dict, relabel: bool = False):
    """Return ``(add, mul)`` from a ring or brace object.

    The identity must be element 0; with ``relabel`` the tables are
    renumbered instead of rejected.
    """
    try:
        add, mul = data["add"], data["mul"]
    except KeyError as exc:
        raise TableError(f"missing table {exc.args[0]!r}") from None
    try:
        arr = np.asarray(add)
    except ValueError:
        raise TableError("ragged add table") from None
    size = data.get("size")
    if size is not None and arr.shape[:1] != (size,):
        raise TableError(f"size {size} does not match add table of shape {arr.shape}")
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1] and arr.size and arr.dtype.kind in "iu":
        if not np.array_equal(arr[0], np.arange(arr.shape[0])):
            if not relabel:
                raise TableError("element 0 must be the additive identity")
            add, mul, _ = relabel_identity_to_zero(add, mul)
    return add, mul


def load_ring(data: dict, relabel: bool = False) -> FiniteRing:
    add, mul = tables_from_json(data, relabel)
    return FiniteRing.from_tables(add, mul, name=data.get("name", ""))


def load_brace(data: dict, relabel: bool = False) -> FiniteBrace:
    add, mul = tables_from_json(data, relabel)
    return FiniteBrace.from_tables(add, mul, side=data.get("side", LEFT), name=data.get("name", ""))


def load_ybmap(data: dict) -> YangBaxterMap:
    try:
        return custom_yb(data["sigma"], data["tau"], data.get("carrier"), name=data.get("name", ""))
    except KeyError as exc:
        raise TableError(f"missing field {exc.args[0]!r}") from None


def load_pointmap(data: dict) -> PointMap:
    try:
        return PointMap(tuple(data["carrier"]), tuple(data["image"]))
    except KeyError as exc:
        raise TableError(f"missing field {exc.args[0]!r}") from None


def load_factorization(data: dict) -> Factorization:
    try:
        return verify_factorization(load_ring(data["ring"]), data["S"], data["I"])
    except KeyError as exc:
        raise TableError(f"missing field {exc.args[0]!r}") from None


LOADERS = {"ring": load_ring, "brace": load_brace, "ybmap": load_ybmap,
           "pointmap": load_pointmap, "factorization": load_factorization}


def load(data: dict):
    kind = data.get("kind")
    if kind is None and "image" in data:
        kind = "pointmap"
    if kind not in LOADERS:
        raise TableError(f"unknown kind {kind!r}")
    return LOADERS[kind](data)


def read_json(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
