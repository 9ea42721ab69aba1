import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import sweep
from symwsc.core import Collection, Params
from symwsc.generator import generate, trace
from symwsc.plabic import EquivariantResolution, dual_plabic_graph, make_trivalent, rotational_symmetry_certificate
from symwsc.serialize import SCHEMA, SchemaError, deserialize, envelope, serialize
from symwsc.tiling import build_tiling
from symwsc.weave import build_weave, symmetric_weave_pipeline

D363 = generate(3, 6, 3)


def artifacts():
    T = build_tiling(D363)
    G = dual_plabic_graph(T)
    H = make_trivalent(G, EquivariantResolution(3))
    return {
        "collection": D363,
        "trace": trace(Params(3, 6, 3)),
        "tiling": T,
        "graph": G,
        "weave": build_weave(H, EquivariantResolution(3)),
        "certificate": rotational_symmetry_certificate(T, 3),
        "pipeline": symmetric_weave_pipeline(3, 6, 3),
    }


@pytest.mark.parametrize("kind", list(artifacts()))
def test_byte_stable_round_trip(kind):
    obj = artifacts()[kind]
    data = serialize(obj)
    doc = json.loads(data)
    assert doc["schema"] == SCHEMA and doc["kind"] == kind and doc["orientation"] == "counterclockwise"
    back = deserialize(data)
    assert serialize(back) == data


def test_decoded_values_equal():
    a = artifacts()
    assert deserialize(serialize(a["collection"])) == D363
    assert deserialize(serialize(a["graph"])) == a["graph"]
    assert deserialize(serialize(a["weave"])) == a["weave"]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(list(sweep(9))))
def test_collections_round_trip(case):
    D = generate(*case)
    assert deserialize(serialize(D)) == D


def test_inputs_are_recorded():
    doc = envelope(D363, {"k": 3})
    assert doc["input"] == {"k": 3}


@pytest.mark.parametrize("text,msg", [
    ("not json", "not JSON"),
    ("[]", "not a JSON object"),
    ('{"schema": "other/9"}', "unsupported schema"),
    ('{"schema": "symwsc/1", "orientation": "clockwise"}', "orientation"),
    ('{"schema": "symwsc/1", "orientation": "counterclockwise", "kind": "nope"}', "unknown artifact kind"),
])
def test_malformed_documents(text, msg):
    with pytest.raises(SchemaError, match=msg):
        deserialize(text)


def test_duplicate_subset_rejected():
    doc = json.loads(serialize(Collection.parse(["12", "23"], 4, 2)))
    doc["payload"]["members"] = [[1, 2], [2, 3], [1, 2]]
    with pytest.raises(SchemaError, match="duplicate subset 12"):
        deserialize(json.dumps(doc))


def test_wrong_size_member_rejected():
    doc = json.loads(serialize(Collection.parse(["12", "23"], 4, 2)))
    doc["payload"]["members"] = [[1, 2], [2, 3, 4]]
    with pytest.raises(SchemaError):
        deserialize(json.dumps(doc))


def test_tampered_tiling_rejected():
    doc = json.loads(serialize(build_tiling(D363)))
    doc["payload"]["faces"] = doc["payload"]["faces"][1:]
    with pytest.raises(SchemaError, match="disagrees"):
        deserialize(json.dumps(doc))


def test_missing_fields():
    doc = json.loads(serialize(D363))
    del doc["payload"]["k"]
    with pytest.raises(SchemaError, match="misses"):
        deserialize(json.dumps(doc))
