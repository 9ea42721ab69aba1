"""Versioned JSON persistence for every artifact kind.

Payloads are canonical (sorted keys, members in lexicographic order), so two
byte-identical documents hold equal values and re-serializing a loaded
artifact reproduces the input bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .core import Collection, KSubset, Params
from .generator import GeneratorTrace, StageTrace
from .plabic import PlabicError, PlabicGraph, SymmetryCertificate
from .tiling import Clique, PlabicTiling, build_tiling
from .weave import BraidWord, PipelineReport, WeaveEdge, WeaveGraph, WeaveVertex, boundary_braid

SCHEMA = "symwsc/1"
TOOL = "symwsc 0.1.0"
ORIENTATION = "counterclockwise"


class SchemaError(ValueError):
    pass


# -- encoders -----------------------------------------------------------------------


def _subset(S: KSubset) -> list[int]:
    return list(S.elements)


def encode_collection(D: Collection) -> dict:
    return {"n": D.n, "k": D.k, "members": [_subset(S) for S in D]}


def encode_trace(tr: GeneratorTrace) -> dict:
    p = tr.params
    return {
        "params": {"k": p.k, "n": p.n, "ell": p.ell},
        "order": list(tr.order),
        "stages": [
            {
                "s": st.s, "a_s": st.a_s, "P_s": st.P, "P_sh": st.P_h, "window": st.window,
                "B_s": [_subset(S) for S in st.B], "L_s": [_subset(S) for S in st.L],
                "predicted": st.predicted,
            }
            for st in tr.stages
        ],
    }


def encode_tiling(T: PlabicTiling) -> dict:
    return {
        "collection": encode_collection(T.collection),
        "faces": [
            {"color": f.color, "core": sorted(f.core), "members": [_subset(S) for S in f.members]}
            for f in T.faces
        ],
        "edges": [[_subset(S), _subset(U)] for S, U in T.edges],
    }


def encode_graph(G: PlabicGraph) -> dict:
    try:
        labels = {f: lab.compact() for f, lab in G.face_labels().items()}
    except PlabicError:  # labels are informative only
        labels = {}
    return {
        "n": G.n,
        "boundary": list(G.boundary),
        "vertices": [
            {"id": v, "color": G.color.get(v), "rotation": list(G.rotation[v]), "tag": G.tags.get(v)}
            for v in sorted(G.rotation)
        ],
        "edges": [
            {"id": e, "ends": list(G.ends[e]), "tag": list(G.edge_tags[e]) if e in G.edge_tags else None}
            for e in sorted(G.ends)
        ],
        "face_labels": sorted(labels.values()),
    }


def encode_weave(W: WeaveGraph) -> dict:
    return {
        "n": W.n,
        "k": W.k,
        "vertices": [
            {
                "id": v, "kind": x.kind, "rotation": list(x.rotation),
                "slot": list(x.slot) if x.slot else None, "origin": [list(o) for o in x.origin],
            }
            for v, x in sorted(W.vertices.items())
        ],
        "edges": [{"id": e, "label": x.label, "ends": list(x.ends)} for e, x in sorted(W.edges.items())],
        "braid": str(boundary_braid(W)),
    }


def encode_certificate(c: SymmetryCertificate) -> dict:
    vm = None if c.vertex_map is None else sorted([a, b] for a, b in c.vertex_map.items())
    return {
        "level": c.level, "ell": c.ell, "ok": c.ok, "label_map": dict(sorted(c.label_map.items())),
        "vertex_map": vm, "witness": c.witness, "fixed_sites": c.fixed_sites,
    }


def encode_pipeline(r: PipelineReport) -> dict:
    p = r.params
    return {
        "params": {"k": p.k, "n": p.n, "ell": p.ell, "d": p.d, "g": p.g, "r": p.r, "c": p.c},
        "order": list(r.order),
        "collection": encode_collection(r.collection),
        "tiling": encode_tiling(r.tiling),
        "graph": encode_graph(r.graph),
        "trivalent": encode_graph(r.trivalent),
        "layers": [encode_graph(L) for L in r.layers],
        "weave": encode_weave(r.weave) if r.weave is not None else None,
        "braid": str(r.braid),
        "ranks": r.ranks,
        "certificates": {k: encode_certificate(c) for k, c in sorted(r.certificates.items())},
        "fixed_sites": r.fixed_sites,
        "validation": r.validation,
        "conventions": r.conventions,
    }


_ENCODERS = [
    (Collection, "collection", encode_collection),
    (GeneratorTrace, "trace", encode_trace),
    (PlabicTiling, "tiling", encode_tiling),
    (PlabicGraph, "graph", encode_graph),
    (WeaveGraph, "weave", encode_weave),
    (PipelineReport, "pipeline", encode_pipeline),
    (SymmetryCertificate, "certificate", encode_certificate),
]


def kind_of(obj: Any) -> str:
    for cls, kind, _ in _ENCODERS:
        if isinstance(obj, cls):
            return kind
    raise SchemaError(f"no serializer for {type(obj).__name__}")


def encode(obj: Any) -> tuple[str, Any]:
    for cls, kind, fn in _ENCODERS:
        if isinstance(obj, cls):
            return kind, fn(obj)
    if isinstance(obj, dict):
        return "report", obj
    raise SchemaError(f"no serializer for {type(obj).__name__}")


def envelope(obj: Any, inputs: dict | None = None, timing: dict | None = None) -> dict:
    kind, payload = encode(obj)
    doc = {"schema": SCHEMA, "tool": TOOL, "orientation": ORIENTATION, "kind": kind,
           "input": inputs or {}, "payload": payload}
    if timing is not None:
        doc["timing"] = timing
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def serialize(obj: Any, inputs: dict | None = None) -> bytes:
    return dumps(envelope(obj, inputs)).encode()


# -- decoders -----------------------------------------------------------------------


def _need(d: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in d]
    if missing:
        raise SchemaError(f"payload misses {missing}")


def decode_collection(d: dict) -> Collection:
    _need(d, "n", "k", "members")
    n, k = d["n"], d["k"]
    members = [KSubset.of(m, n) for m in d["members"]]
    for raw, S in zip(d["members"], members):
        if len(S) != len(raw) or len(S) != k:
            raise SchemaError(f"member {raw} is not a {k}-subset of [{n}]")
    if len(set(members)) != len(members):
        seen, dup = set(), None
        for S in members:
            if S in seen:
                dup = S
                break
            seen.add(S)
        raise SchemaError(f"duplicate subset {dup.compact()} in collection")
    return Collection(members, n, k)


def decode_trace(d: dict) -> GeneratorTrace:
    _need(d, "params", "order", "stages")
    p = Params(d["params"]["k"], d["params"]["n"], d["params"]["ell"])
    stages = []
    for st in d["stages"]:
        n = p.n
        B = Collection((KSubset.of(S, n) for S in st["B_s"]), n, p.k)
        L = Collection((KSubset.of(S, n) for S in st["L_s"]), n, p.k)
        stages.append(StageTrace(st["s"], st["a_s"], st["P_s"], st["P_sh"], st["window"], B, L, st["predicted"]))
    return GeneratorTrace(p, tuple(d["order"]), stages)


def decode_tiling(d: dict) -> PlabicTiling:
    _need(d, "collection", "faces", "edges")
    D = decode_collection(d["collection"])
    T = build_tiling(D)
    faces = [Clique(f["color"], frozenset(f["core"]), tuple(KSubset.of(S, D.n) for S in f["members"]))
             for f in d["faces"]]
    edges = [(KSubset.of(a, D.n), KSubset.of(b, D.n)) for a, b in d["edges"]]
    if faces != T.faces or edges != T.edges:
        raise SchemaError("tiling payload disagrees with the tiling of its collection")
    return T


def decode_graph(d: dict) -> PlabicGraph:
    _need(d, "n", "boundary", "vertices", "edges")
    color, rotation, tags, ends, edge_tags = {}, {}, {}, {}, {}
    for v in d["vertices"]:
        rotation[v["id"]] = tuple(v["rotation"])
        if v["color"] is not None:
            color[v["id"]] = v["color"]
        if v.get("tag") is not None:
            tags[v["id"]] = v["tag"]
    for e in d["edges"]:
        ends[e["id"]] = tuple(e["ends"])
        if e.get("tag") is not None:
            edge_tags[e["id"]] = tuple(e["tag"])
    return PlabicGraph(d["n"], color, rotation, ends, d["boundary"], tags, edge_tags)


def decode_weave(d: dict) -> WeaveGraph:
    _need(d, "n", "k", "vertices", "edges")
    vertices = {
        v["id"]: WeaveVertex(v["kind"], tuple(v["rotation"]), tuple(v["slot"]) if v["slot"] else None,
                             tuple(tuple(o) for o in v["origin"]))
        for v in d["vertices"]
    }
    edges = {e["id"]: WeaveEdge(e["label"], tuple(e["ends"])) for e in d["edges"]}
    return WeaveGraph(d["n"], d["k"], vertices, edges)


def decode_certificate(d: dict) -> SymmetryCertificate:
    vm = None if d["vertex_map"] is None else {a: b for a, b in d["vertex_map"]}
    return SymmetryCertificate(d["level"], d["ell"], d["ok"], dict(d["label_map"]), vm,
                               d["witness"], list(d["fixed_sites"]))


def decode_pipeline(d: dict) -> PipelineReport:
    p = d["params"]
    return PipelineReport(
        params=Params(p["k"], p["n"], p["ell"]),
        order=tuple(d["order"]),
        collection=decode_collection(d["collection"]),
        tiling=decode_tiling(d["tiling"]),
        graph=decode_graph(d["graph"]),
        trivalent=decode_graph(d["trivalent"]),
        layers=[decode_graph(L) for L in d["layers"]],
        weave=decode_weave(d["weave"]) if d["weave"] is not None else None,
        braid=BraidWord.parse(d["braid"]),
        ranks=list(d["ranks"]),
        certificates={k: decode_certificate(c) for k, c in d["certificates"].items()},
        fixed_sites=list(d["fixed_sites"]),
        validation=list(d["validation"]),
        conventions=dict(d["conventions"]),
    )


_DECODERS = {
    "collection": decode_collection,
    "trace": decode_trace,
    "tiling": decode_tiling,
    "graph": decode_graph,
    "weave": decode_weave,
    "pipeline": decode_pipeline,
    "certificate": decode_certificate,
}


def load_document(data: bytes | str) -> dict:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("document is not a JSON object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}, expected {SCHEMA!r}")
    if doc.get("orientation") != ORIENTATION:
        raise SchemaError(f"unsupported orientation {doc.get('orientation')!r}")
    if doc.get("kind") not in _DECODERS:
        raise SchemaError(f"unknown artifact kind {doc.get('kind')!r}")
    return doc


def deserialize(data: bytes | str) -> Any:
    doc = load_document(data)
    try:
        return _DECODERS[doc["kind"]](doc["payload"])
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed {doc['kind']} payload: {exc}") from exc
