"""``brace-lab`` command-line interface.

Every command prints one JSON document (sorted keys) and exits with 0 when
the verdict is true, 1 when it is false and 2 on input or hypothesis errors.
"""

from __future__ import annotations

import argparse
import logging
import math
import re
import sys
from typing import Callable

import numpy as np

from . import __version__
from .acceptance import run_all
from .algebra import (FiniteBrace, FiniteRing, adjoint_brace, check_brace_axioms, check_ring_axioms,
                      normalize_subset, socle, star_associativity_witness)
from .catalog import LISTED, catalog, ut_positions, ut_vector
from .errors import BraceLabError, HypothesisFailed, TableError
from .factorizable import (Factorization, check_coset_lemma, check_socle_reflection,
                           coset_socle_map, make_involutive_ring_reflection, make_ring_reflection,
                           ring_wedge, verify_factorization, verify_ideal_J)
from .paramdep import (check_param_reflection, check_param_ybe, linearize_point_map, linearize_r,
                       spot_check)
from .reflection import (FAMILIES, FIRST, FULL, PointMap, WedgeOp, check_reflection,
                         check_two_torsion_condition, check_wedge_theorem, default_jobs,
                         enumerate_maps, family, is_equivariant, is_involutive_map)
from .serialize import dumps, load, read_json, tables_from_json, to_json
from .yang_baxter import YangBaxterMap, check_sigma_identities, check_ybe, classify, yb_from_brace

log = logging.getLogger("brace_lab")

DEFAULT_SEED = 0


class UsageError(BraceLabError):
    pass


# -- loading ---------------------------------------------------------------------

def _source(args):
    """The object named by --catalog or stored in --file."""
    if getattr(args, "catalog", None) and getattr(args, "file", None):
        raise UsageError("give either --catalog or --file, not both")
    if getattr(args, "catalog", None):
        return catalog(args.catalog).obj
    if getattr(args, "file", None):
        data = read_json(args.file)
        if data.get("kind") == "brace" and getattr(args, "relabel", False):
            from .serialize import load_brace
            return load_brace(data, relabel=True)
        return load(data)
    raise UsageError("an input is required: --catalog NAME or --file PATH")


def _subset(args, size: int):
    text = getattr(args, "subset", None)
    if not text:
        return None
    return normalize_subset(_int_list(text), size)


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in re.split(r"[,\s]+", text.strip()) if v]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _brace(obj) -> FiniteBrace:
    if isinstance(obj, FiniteBrace):
        return obj
    if isinstance(obj, FiniteRing):
        return adjoint_brace(obj)
    if isinstance(obj, Factorization):
        return obj.brace
    raise UsageError(f"expected a brace, ring or factorization, got {type(obj).__name__}")


def _ring(obj) -> FiniteRing:
    if isinstance(obj, FiniteRing):
        return obj
    if isinstance(obj, Factorization):
        return obj.ring
    raise UsageError(f"expected a ring or factorization, got {type(obj).__name__}")


def _factorization(obj) -> Factorization:
    if isinstance(obj, Factorization):
        return obj
    raise UsageError(f"expected a factorization, got {type(obj).__name__}")


def _yb(args) -> tuple[YangBaxterMap, object]:
    obj = _source(args)
    if isinstance(obj, YangBaxterMap):
        if getattr(args, "subset", None):
            raise UsageError("--subset applies to braces, not to stored Yang-Baxter maps")
        return obj, obj
    brace = _brace(obj)
    return yb_from_brace(brace, _subset(args, brace.size)), obj


# -- map specifications ----------------------------------------------------------

def _ut_dim(size: int) -> int | None:
    npos = int(round(math.log2(size))) if size > 1 else 0
    if 2 ** npos != size:
        return None
    dim = int(round((1 + math.sqrt(1 + 8 * npos)) / 2))
    return dim if dim * (dim - 1) // 2 == npos else None


_TERM = re.compile(r"^(id|0|e\d\d|x\d\d)(\*(e\d\d|x\d\d))*$")


def ring_map(spec: str, ring: FiniteRing, carrier) -> PointMap:
    """Map on a bundled F_2 upper-triangular ring given as a sum of terms.

    A term is ``id``, ``0``, or a product of one unit ``eIJ`` with any number
    of coordinates ``xIJ``; ``e23*x23`` is x ↦ x23·e23 and
    ``id+e13*x12*x23`` is x ↦ x + x12·x23·e13.
    """
    dim = _ut_dim(ring.size)
    if dim is None:
        raise UsageError("coordinate map specs need an upper-triangular F_2 matrix ring")
    pos = ut_positions(dim)
    names = {f"{i}{j}": k for k, (i, j) in enumerate(pos)}
    terms = [t for t in spec.replace(" ", "").split("+") if t]
    for t in terms:
        if not _TERM.match(t):
            raise UsageError(f"cannot parse term {t!r} of map {spec!r}")
        for f in t.split("*"):
            if f[0] in "ex" and f[1:] not in names:
                raise UsageError(f"no coordinate {f!r} in {dim}x{dim} upper-triangular matrices")

    def fn(x: int) -> int:
        vec = ut_vector(x, dim)
        total = 0
        for t in terms:
            if t == "id":
                total = ring.plus(total, x)
                continue
            if t == "0":
                continue
            factors = t.split("*")
            units = [f for f in factors if f[0] == "e"]
            if len(units) != 1:
                raise UsageError(f"term {t!r} needs exactly one matrix unit or 'id'")
            coef = 1
            for f in factors:
                if f[0] == "x":
                    coef *= vec[names[f[1:]]]
            unit = 2 ** names[units[0][1:]]
            if coef % 2:
                total = ring.plus(total, unit)
        return total

    return PointMap.from_function(carrier, fn)


def parse_map(spec: str, carrier, ring: FiniteRing | None = None) -> PointMap:
    """``id``, ``const:a``, an image list ``"0,3,2,1"`` or a ring coordinate spec."""
    carrier = tuple(carrier)
    s = spec.strip()
    if s == "id":
        return PointMap.identity(carrier)
    if s.startswith("const:"):
        return PointMap.constant(carrier, int(s[6:]))
    if re.fullmatch(r"[\d,\s]+", s):
        image = _int_list(s)
        if len(image) != len(carrier):
            raise UsageError(f"map has {len(image)} images for a carrier of {len(carrier)} points")
        return PointMap(carrier, tuple(image))
    if ring is None:
        raise UsageError(f"cannot interpret map {spec!r} without a ring")
    return ring_map(s, ring, carrier)


def parse_reflection(spec: str) -> tuple[str, dict]:
    """``"k1:c=1"`` or ``"l_mn:c=1,m=2,n=-1"`` -> (kind, params)."""
    kind, _, rest = spec.partition(":")
    if kind not in FAMILIES:
        raise UsageError(f"unknown family {kind!r}; expected one of {', '.join(FAMILIES)}")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq or key not in ("a", "c", "n", "m"):
            raise UsageError(f"bad family parameter {item!r}")
        try:
            params[key] = int(val)
        except ValueError:
            raise UsageError(f"family parameter {key} must be an integer") from None
    return kind, params


def _ring_or_none(obj) -> FiniteRing | None:
    if isinstance(obj, FiniteRing):
        return obj
    if isinstance(obj, Factorization):
        return obj.ring
    return None


def _k_from_args(args, r: YangBaxterMap, obj) -> PointMap:
    if getattr(args, "reflection", None):
        kind, params = parse_reflection(args.reflection)
        return family(_brace(obj), kind, r.carrier, force=getattr(args, "force", False), **params)
    if getattr(args, "map", None):
        return parse_map(args.map, r.carrier, _ring_or_none(obj))
    raise UsageError("give the map with --map or --reflection")


def _pm(k: PointMap) -> dict:
    return to_json(k)


# -- commands --------------------------------------------------------------------

def cmd_check_brace(args):
    if args.catalog:
        obj = _source(args)
        b = _brace(obj)
        report = check_brace_axioms(b.add, b.mul, side=b.side)
    else:
        data = read_json(args.file) if args.file else None
        if data is None:
            raise UsageError("an input is required: --catalog NAME or --file PATH")
        add, mul = tables_from_json(data, relabel=args.relabel)
        report = check_brace_axioms(add, mul, side=data.get("side", args.side))
    out = report.to_json()
    if report.ok:
        b = report.brace
        out.update(size=b.size, two_sided=b.is_two_sided, trivial=b.is_trivial,
                   socle=list(socle(b, "left")) if b.side == "left" else None,
                   socle_opposite=list(socle(b, "opposite")) if b.side == "left" else None)
        w = star_associativity_witness(b)
        out["star_associativity_witness"] = list(w) if w else None
    return report.ok, out


def cmd_check_ring(args):
    if args.catalog:
        ring = _ring(_source(args))
        add, mul = ring.add, ring.mul
    elif args.file:
        add, mul = tables_from_json(read_json(args.file), relabel=args.relabel)
    else:
        raise UsageError("an input is required: --catalog NAME or --file PATH")
    report = check_ring_axioms(add, mul)
    out = report.to_json()
    if report.ok:
        ring = FiniteRing.from_tables(add, mul)
        out["nilpotency_index"] = ring.nilpotency_index
        try:
            adjoint_brace(ring)
            out["radical"] = True
        except BraceLabError as exc:
            out["radical"] = False
            out["radical_witness"] = list(exc.witness) if exc.witness else None
    return report.ok, out


def cmd_yb_derive(args):
    r, _ = _yb(args)
    return True, {"ybmap": to_json(r), **classify(r)}


def cmd_yb_classify(args):
    r, _ = _yb(args)
    flags = classify(r)
    return flags["involutive"] and flags["nondegenerate"], flags


def cmd_yb_ybe(args):
    r, obj = _yb(args)
    v = check_ybe(r)
    out = {"ybe": v.ok, "witness": list(v.witness) if v.witness else None}
    if not isinstance(obj, YangBaxterMap):
        s = check_sigma_identities(_brace(obj), r.carrier)
        out["sigma_identities"] = s.ok
        out["sigma_witness"] = list(s.witness) if s.witness else None
    return v.ok, out


def cmd_reflect_check(args):
    r, obj = _yb(args)
    k = _k_from_args(args, r, obj)
    v = check_reflection(r, k, mode=args.mode)
    return v.ok, {"reflection": v.ok, "mode": args.mode, "map": _pm(k),
                  "witness": list(v.witness) if v.witness else None,
                  "equivariant": is_equivariant(r, k), "involutive": is_involutive_map(k)}


def cmd_reflect_enumerate(args):
    r, _ = _yb(args)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    rep = enumerate_maps(r, filter=args.filter, budget=args.budget,
                         allow_truncation=not args.no_truncate, jobs=jobs)
    out = rep.to_json(emit_maps=args.emit_maps)
    key = "reflection_count" if args.filter != "equivariant" else "equivariant_count"
    out["count"] = out[key]
    return True, out


def cmd_reflect_family(args):
    r, obj = _yb(args)
    brace = _brace(obj)
    if args.reflection:
        kind, params = parse_reflection(args.reflection)
    else:
        raise UsageError("give the family with --reflection KIND:key=value,...")
    k = family(brace, kind, r.carrier, force=args.force, **params)
    v = check_reflection(r, k)
    out = {"kind": kind, "params": params, "map": _pm(k), "reflection": v.ok,
           "witness": list(v.witness) if v.witness else None,
           "equivariant": is_equivariant(r, k), "involutive": is_involutive_map(k),
           "forced": args.force}
    if "c" in params:
        cond, in_socle = check_two_torsion_condition(brace, params["c"], r.carrier)
        out.update(two_torsion=cond.ok, c_in_socle=in_socle,
                   central=brace.is_central(params["c"]))
    return v.ok, out


def _wedge(name: str, obj, carrier) -> WedgeOp:
    if name == "first":
        return WedgeOp.from_function(carrier, lambda x, y: x)
    if name in ("plus", "circ"):
        b = _brace(obj)
        return WedgeOp.from_function(carrier, b.plus if name == "plus" else b.circ)
    if name in ("ring-k1", "ring-k2"):
        ring = _ring_or_none(obj)
        if ring is None:
            raise UsageError(f"wedge {name} needs a ring or factorization")
        return ring_wedge(ring, carrier, name[5:])
    raise UsageError(f"unknown wedge {name!r}")


def cmd_reflect_wedge(args):
    r, obj = _yb(args)
    ring = _ring_or_none(obj)
    f = parse_map(args.f, r.carrier, ring)
    g = parse_map(args.g, r.carrier, ring)
    res = check_wedge_theorem(r, f, g, _wedge(args.wedge, obj, r.carrier))
    out = {k: (list(v) if isinstance(v, tuple) else v) for k, v in res.items() if k != "k"}
    out["k"] = _pm(res["k"])
    return res["is_reflection"], out


def _fac_and_X(args):
    fac = _factorization(_source(args))
    return fac, _subset(args, fac.ring.size)


def _J(args, fac: Factorization):
    if args.J is not None:
        return tuple(_int_list(args.J))
    if args.catalog:
        J = catalog(args.catalog).extras.get("J")
        if J is not None:
            return J
    raise UsageError("give the ideal with --J")


def cmd_factor_verify(args):
    fac = _factorization(_source(args))
    return True, {"factorization": to_json(fac), "decomp": [list(p) for p in fac.decomp]}


def cmd_factor_odot(args):
    fac = _factorization(_source(args))
    b = fac.brace
    r = yb_from_brace(b)
    return True, {"brace": to_json(b), "two_sided": b.is_two_sided, **classify(r)}


def cmd_factor_ideal(args):
    fac, X = _fac_and_X(args)
    J = verify_ideal_J(fac.ring, _J(args, fac), fac.I, X)
    return True, {"J": list(J.members)}


def cmd_factor_lemma(args):
    fac, X = _fac_and_X(args)
    xs = normalize_subset(X, fac.ring.size)
    k = parse_map(args.map or "id", xs, fac.ring)
    v = check_coset_lemma(fac, _J(args, fac), k, X)
    return v.ok, {"lemma": v.ok, "map": _pm(k), "witness": list(v.witness) if v.witness else None}


def cmd_factor_make_k(args):
    fac, X = _fac_and_X(args)
    xs = normalize_subset(X, fac.ring.size)
    f = parse_map(args.f, xs, fac.ring)
    g = parse_map(args.g, xs, fac.ring)
    J = _J(args, fac) if args.hypotheses == "ideal" else None
    k = make_ring_reflection(fac, f, g, args.variant, args.hypotheses, J=J, X=X)
    return True, {"map": _pm(k), "trivial": k.is_identity, "reflection": True}


def cmd_factor_socle(args):
    fac, X = _fac_and_X(args)
    J = _J(args, fac)
    if args.map:
        k = parse_map(args.map, normalize_subset(X, fac.ring.size), fac.ring)
    else:
        k = coset_socle_map(fac, J, X)
    v = check_socle_reflection(fac, J, k, X)
    return v.ok, {"map": _pm(k), "reflection": v.ok, "trivial": k.is_identity}


def cmd_factor_involutive(args):
    fac, X = _fac_and_X(args)
    g = parse_map(args.g, normalize_subset(X, fac.ring.size), fac.ring)
    k = make_involutive_ring_reflection(fac, _J(args, fac), g, X)
    return True, {"map": _pm(k), "trivial": k.is_identity, "involutive": True, "reflection": True}


def _spot_points(seed: int):
    rng = np.random.default_rng(seed)
    fixed = [(u, v) for u in range(3) for v in range(3)]
    extra = [tuple(int(t) for t in rng.integers(-5, 6, size=2)) for _ in range(3)]
    return fixed + extra


def cmd_paramdep_ybe(args):
    r, _ = _yb(args)
    rep = check_param_ybe(linearize_r(r))
    return rep.identity, {**rep.to_json(), "involutive": classify(r)["involutive"]}


def cmd_paramdep_reflection(args):
    r, obj = _yb(args)
    k = _k_from_args(args, r, obj)
    R, K = linearize_r(r), linearize_point_map(k)
    rep = check_param_reflection(R, K, affine_k=args.affine_k)
    out = {**rep.to_json(), "map": _pm(k), "affine_k": args.affine_k}
    if not args.affine_k:
        pts = _spot_points(args.seed)
        out["spot_checks"] = {"points": [list(p) for p in pts],
                              "agree": all(spot_check(R, K, u, v) for u, v in pts)}
    return rep.identity, out


def cmd_catalog(args):
    if not args.name:
        return True, {"entries": [{"name": n, "kind": catalog(n).kind} for n in LISTED],
                      "patterns": ["trivial:n", "zero:n", "zn:n:k", "cyclic:n", "phi:n", "flip:n"]}
    entry = catalog(args.name)
    out = {"name": entry.name, "kind": entry.kind, "object": to_json(entry.obj)}
    if entry.extras:
        out["extras"] = {k: list(v) for k, v in entry.extras.items()}
    return True, out


def cmd_selftest(args):
    results = run_all()
    for res in results:
        print(res.line(), file=sys.stderr)
    ok = all(res.passed for res in results)
    # elapsed times vary between runs; keep the JSON deterministic
    return ok, {"criteria": [{k: v for k, v in res.to_json().items() if k != "elapsed"}
                             for res in results], "passed": ok}


# -- parser ----------------------------------------------------------------------

def _common(p, subset=True):
    p.add_argument("--catalog", metavar="NAME", help="bundled example (see 'brace-lab catalog')")
    p.add_argument("--file", metavar="PATH", help="JSON input")
    if subset:
        p.add_argument("--subset", metavar="X", help="carrier X as comma-separated indices")


def _globals() -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand."""
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", metavar="PATH", default=argparse.SUPPRESS,
                   help="write JSON here instead of stdout")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled checks")
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                   help="worker processes (default: $BRACE_LAB_JOBS or 1)")
    return p


_GLOBALS = _globals()


def _add(sub, name, fn: Callable, help: str, subset=True, aliases=()):
    p = sub.add_parser(name, help=help, aliases=list(aliases), parents=[_GLOBALS])
    _common(p, subset)
    p.set_defaults(func=fn)
    return p


def _enumerate_flags(p):
    p.add_argument("--filter", choices=("reflections", "equivariant", "both"), default="both")
    p.add_argument("--budget", type=int, help="scan at most this many maps")
    p.add_argument("--no-truncate", action="store_true",
                   help="fail instead of truncating when the budget is too small")
    p.add_argument("--emit-maps", action="store_true", help="list the maps found")


def _reflection_flags(p):
    p.add_argument("--map", help="id, const:a, an image list, or a coordinate spec such as e23*x23")
    p.add_argument("--reflection", metavar="KIND:k=v", help="family spec such as k1:c=1")
    p.add_argument("--force", action="store_true", help="skip family hypothesis checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brace-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--output", metavar="PATH", help="write JSON here instead of stdout")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled checks")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: $BRACE_LAB_JOBS or 1)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = _add(sub, "check-brace", cmd_check_brace, "validate brace tables", subset=False)
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--relabel", action="store_true", help="renumber so the identity is 0")
    p = _add(sub, "check-ring", cmd_check_ring, "validate ring tables", subset=False)
    p.add_argument("--relabel", action="store_true", help="renumber so the identity is 0")

    yb = sub.add_parser("yb", help="Yang-Baxter maps").add_subparsers(dest="action", required=True)
    _add(yb, "derive", cmd_yb_derive, "Yang-Baxter map of a brace on X")
    _add(yb, "classify", cmd_yb_classify, "involutive / nondegenerate flags")
    _add(yb, "ybe", cmd_yb_ybe, "check the braid relation")

    rf = sub.add_parser("reflect", help="reflections").add_subparsers(dest="action", required=True)
    p = _add(rf, "check", cmd_reflect_check, "check the reflection equation for one map")
    _reflection_flags(p)
    p.add_argument("--mode", choices=(FULL, FIRST), default=FULL)
    p = _add(rf, "enumerate", cmd_reflect_enumerate, "scan all maps X -> X")
    _enumerate_flags(p)
    p = _add(rf, "family", cmd_reflect_family, "build a reflection family member")
    p.add_argument("--reflection", metavar="KIND:k=v", required=True)
    p.add_argument("--force", action="store_true", help="skip hypothesis checks")
    p = _add(rf, "wedge", cmd_reflect_wedge, "wedge criterion for k(x) = f(x) ∧ g(x)")
    p.add_argument("--f", default="id")
    p.add_argument("--g", default="id")
    p.add_argument("--wedge", choices=("first", "plus", "circ", "ring-k1", "ring-k2"),
                   default="first")

    fc = sub.add_parser("factor", help="factorized rings").add_subparsers(dest="action", required=True)
    _add(fc, "verify", cmd_factor_verify, "validate S, I and the decomposition", subset=False)
    _add(fc, "odot", cmd_factor_odot, "the ⊙-brace", subset=False)
    p = _add(fc, "ideal", cmd_factor_ideal, "validate J ⊆ I ∩ X")
    p.add_argument("--J", help="ideal members (default: the catalog's J)")
    p = _add(fc, "lemma", cmd_factor_lemma, "coset lemma for k")
    p.add_argument("--J")
    p.add_argument("--map", help="k (default id)")
    p = _add(fc, "make-k", cmd_factor_make_k, "ring reflection k1 = f∗g or k2 = f + f∗g")
    p.add_argument("--J")
    p.add_argument("--f", default="id")
    p.add_argument("--g", required=True)
    p.add_argument("--variant", choices=("k1", "k2"), default="k2")
    p.add_argument("--hypotheses", choices=("direct", "ideal"), default="ideal")
    p = _add(fc, "socle", cmd_factor_socle, "socle-valued reflection (default: coset representatives)")
    p.add_argument("--J")
    p.add_argument("--map")
    p = _add(fc, "involutive", cmd_factor_involutive, "involutive reflection x + x∗g(x)")
    p.add_argument("--J")
    p.add_argument("--g", required=True)

    pd = sub.add_parser("paramdep", help="parameter-dependent equations").add_subparsers(
        dest="action", required=True)
    _add(pd, "ybe", cmd_paramdep_ybe, "YBE with R'(u) = I + uR")
    p = _add(pd, "reflection", cmd_paramdep_reflection, "reflection equation with K'(u) = uK")
    _reflection_flags(p)
    p.add_argument("--affine-k", action="store_true", help="experiment with K'(u) = I + uK")

    # top-level shortcuts
    p = _add(sub, "enumerate", cmd_reflect_enumerate, "alias of 'reflect enumerate'")
    _enumerate_flags(p)
    _add(sub, "paramdep-ybe", cmd_paramdep_ybe, "alias of 'paramdep ybe'")
    p = _add(sub, "paramdep-reflection", cmd_paramdep_reflection, "alias of 'paramdep reflection'")
    _reflection_flags(p)
    p.add_argument("--affine-k", action="store_true")

    p = sub.add_parser("catalog", help="list or show bundled examples", parents=[_GLOBALS])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    p = sub.add_parser("selftest", help="run the acceptance suite", parents=[_GLOBALS])
    p.set_defaults(func=cmd_selftest)
    return parser


def _emit(doc: dict, path: str | None):
    text = dumps(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    head = {"command": " ".join(filter(None, [args.command, getattr(args, "action", None)])),
            "seed": args.seed}
    try:
        ok, body = args.func(args)
        code = 0 if ok else 1
        doc = {**head, **body, "ok": bool(ok)}
    except (BraceLabError, TableError, ValueError, KeyError, OSError) as exc:
        witness = getattr(exc, "witness", None)
        doc = {**head, "ok": False, "error": type(exc).__name__,
               "message": str(exc.args[0]) if exc.args else str(exc),
               "witness": _jsonable(witness)}
        if isinstance(exc, HypothesisFailed):
            doc["hypothesis"] = exc.name
        code = 2
    _emit(doc, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
