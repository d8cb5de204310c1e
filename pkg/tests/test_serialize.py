import json

import numpy as np
import pytest

from brace_lab.algebra import opposite_brace
from brace_lab.catalog import catalog, cyclic_tables, trivial_brace, ut_ring
from brace_lab.errors import AxiomError, TableError
from brace_lab.reflection import PointMap, family
from brace_lab.serialize import (dumps, load, load_brace, load_ring, read_json, tables_from_json,
                                 to_json)
from brace_lab.yang_baxter import custom_yb, yb_from_brace


def roundtrip(obj):
    return load(json.loads(dumps(to_json(obj))))


@pytest.mark.parametrize("name", ["trivial:3", "z4adj", "ut3odot", "onesided8"])
def test_brace_roundtrip(name):
    b = catalog(name).obj
    back = roundtrip(b)
    assert np.array_equal(back.add, b.add) and np.array_equal(back.mul, b.mul)


def test_right_brace_keeps_side():
    op = opposite_brace(catalog("ut3odot").obj)
    data = to_json(op)
    assert data["side"] == "right"
    assert roundtrip(op).side == "right"


def test_ring_roundtrip():
    ring = ut_ring(3)
    back = roundtrip(ring)
    assert np.array_equal(back.mul, ring.mul)


def test_ybmap_roundtrip_uses_tau_by_y():
    r = custom_yb(*cyclic_tables(4))
    data = to_json(r)
    assert data["tau"][0][0] == r(0, 0)[1]
    back = roundtrip(r)
    assert all(back(x, y) == r(x, y) for x in range(4) for y in range(4))
    rb = yb_from_brace(catalog("z4adj").obj)
    data = to_json(rb)
    for x in range(4):
        for y in range(4):
            assert rb(x, y) == (data["sigma"][x][y], data["tau"][y][x])


def test_pointmap_and_factorization_roundtrip(z4, ut3):
    k = family(z4, "k1", c=1)
    assert roundtrip(k).image == k.image
    assert load({"carrier": [0, 1], "image": [1, 0]}).image == (1, 0)
    fac = roundtrip(ut3)
    assert fac.S == ut3.S and fac.I == ut3.I


def test_relabel_identity():
    # Z_2 with the identity written as element 1
    data = {"kind": "brace", "add": [[1, 0], [0, 1]], "mul": [[1, 0], [0, 1]]}
    with pytest.raises(TableError):
        load_brace(data)
    b = load_brace(data, relabel=True)
    assert b.add.tolist() == [[0, 1], [1, 0]]


@pytest.mark.parametrize("data", [
    {"kind": "brace", "add": [[0, 1], [1, 0]]},
    {"kind": "brace", "size": 3, "add": [[0, 1], [1, 0]], "mul": [[0, 1], [1, 0]]},
    {"kind": "brace", "add": [[0, 1], [1]], "mul": [[0, 1], [1, 0]]},
    {"kind": "widget"},
    {"kind": "ybmap", "sigma": [[0]]},
    {"kind": "pointmap", "image": [0]},
])
def test_malformed_input(data):
    with pytest.raises(TableError):
        load(data)


def test_axiom_failure_on_load():
    add = [[(x + y) % 4 for y in range(4)] for x in range(4)]
    mul = [[(x + y + x * y) % 4 for y in range(4)] for x in range(4)]
    with pytest.raises(AxiomError):
        load_brace({"add": add, "mul": mul})
    ring = load_ring({"add": add, "mul": [[0] * 4 for _ in range(4)]})
    assert ring.size == 4


def test_dumps_is_canonical(tmp_path):
    doc = {"b": [1, 2], "a": {"z": 1, "y": 2}}
    text = dumps(doc)
    assert text.endswith("\n") and text.index('"a"') < text.index('"b"')
    p = tmp_path / "x.json"
    p.write_text(text)
    assert read_json(p) == doc
    assert dumps(to_json(trivial_brace(3))) == dumps(to_json(trivial_brace(3)))


def test_tables_from_json_passthrough():
    add, mul = tables_from_json({"add": [[0, 1], [1, 0]], "mul": [[0, 1], [1, 0]]})
    assert add == [[0, 1], [1, 0]]


def test_to_json_rejects_unknown():
    with pytest.raises(TypeError):
        to_json(object())
    assert to_json(PointMap.identity((0, 2)))["image"] == [0, 2]
