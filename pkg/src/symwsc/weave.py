"""T-shift, weave assembly, N-graph validation and the symmetric pipeline.

Layer ``i`` of the weave is the ``i``-th iterated T-shift of a trivalent
plabic graph, with edges labelled by the Artin generator ``s_i``.  A black
vertex of layer ``i`` and the white vertex it turns into in layer ``i+1`` are
one hexavalent weave vertex; that correspondence is tracked by identity.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .core import Collection, Params, mod1
from .generator import InfeasibleError, default_order, generate
from .plabic import (
    DeleteBivalent,
    EquivariantResolution,
    IsomorphismError,
    PlabicError,
    PlabicGraph,
    ResolutionSite,
    SymmetryCertificate,
    apply_move,
    boundary_isomorphism,
    dual_plabic_graph,
    resolve_trivalent,
    rotational_symmetry_certificate,
)
from .tiling import BLACK, WHITE, PlabicTiling, build_tiling

TRIVALENT = "trivalent"
HEXAVALENT = "hexavalent"
ENDPOINT = "endpoint"

# boundary conventions recorded in every report
CONVENTIONS = {
    "marked_points": "counterclockwise",
    "tshift_boundary": "old marked point dropped; i' joined to the face on arc (i, i+1) becomes point i",
    "slot_order": "(p, j) lexicographic counterclockwise",
    "fixed_vertex_tree": "caterpillar from the least corner",
}


class WeaveError(ValueError):
    pass


# -- T-shift ---------------------------------------------------------------------


@dataclass
class TShift:
    graph: PlabicGraph
    provenance: dict[int, int]  # black vertex of the input -> its white copy
    sites: list[ResolutionSite] = field(default_factory=list)


def t_shift(G: PlabicGraph, policy: EquivariantResolution | None = None) -> TShift:
    """One T-shift.

    Black vertices become white, each face gets a black vertex joined to the
    white copies on its boundary and to the new marked point ``i'`` sitting on
    arc ``(i, i+1)``.  Old white vertices, old edges and old marked points go.
    Corner ``j`` of a black vertex (between rotation slots ``j`` and ``j+1``)
    becomes rotation slot ``j`` of its white copy.
    """
    if not G.is_trivalent():
        raise PlabicError("T-shift needs a trivalent plabic graph")
    n = G.n
    blacks = [v for v in G.internal if G.color[v] == BLACK]
    inner = G.inner_faces
    boundary = list(range(n))
    white_of = {b: n + i for i, b in enumerate(blacks)}
    face_vertex = {f: n + len(blacks) + i for i, f in enumerate(inner)}
    color = {w: WHITE for w in white_of.values()}
    color.update({u: BLACK for u in face_vertex.values()})
    ends: dict[int, tuple[int, int]] = {}
    corner_edge: dict[tuple[int, int], int] = {}
    for b in blacks:
        R = G.rotation[b]
        for j in range(3):
            f = G.face_of((R[j], b))
            e = len(ends)
            ends[e] = (white_of[b], face_vertex[f])
            corner_edge[(b, j)] = e
    rotation: dict[int, tuple[int, ...]] = {
        white_of[b]: tuple(corner_edge[(b, j)] for j in range(3)) for b in blacks
    }
    for f in inner:
        u = face_vertex[f]
        rot = []
        for e, t in G.faces[f]:
            if e < 0:
                i = -e
                if t != G.boundary[i - 1]:
                    continue
                pe = len(ends)
                ends[pe] = (boundary[i - 1], u)
                rotation[boundary[i - 1]] = (pe,)
                rot.append(pe)
            elif t in G.color and G.color[t] == BLACK:
                rot.append(corner_edge[(t, G.rotation[t].index(e))])
        rotation[u] = tuple(rot)
    missing = [i for i in range(1, n + 1) if boundary[i - 1] not in rotation]
    if missing:
        raise PlabicError(f"no face borders arcs {missing}")
    for u in face_vertex.values():
        if not rotation[u]:
            del rotation[u], color[u]
    H = PlabicGraph(n, color, rotation, ends, boundary)
    for u in sorted(face_vertex.values()):
        if u in H.color and H.degree(u) == 1:
            raise PlabicError(f"T-shift produced a lollipop at face vertex {u}")
        if u in H.color and H.degree(u) == 2:
            H = apply_move(H, DeleteBivalent(u))
    H, sites = resolve_trivalent(H, policy, colors=(BLACK,))
    return TShift(H, white_of, sites)


def iterate_t_shift(G: PlabicGraph, policy: EquivariantResolution | None = None) -> list[TShift]:
    """``G_1 = G↓, G_2, ..., G_{k-1}``."""
    k = G.rank()
    shifts: list[TShift] = []
    cur = G
    for _ in range(k - 1):
        step = t_shift(cur, policy)
        shifts.append(step)
        cur = step.graph
    return shifts


# -- weaves -------------------------------------------------------------------------


@dataclass(frozen=True)
class WeaveVertex:
    kind: str
    rotation: tuple[int, ...]
    slot: tuple[int, int] | None = None
    origin: tuple[tuple[int, int], ...] = ()

    @property
    def degree(self) -> int:
        return len(self.rotation)


@dataclass(frozen=True)
class WeaveEdge:
    label: int
    ends: tuple[int, int]


@dataclass
class WeaveGraph:
    n: int
    k: int
    vertices: dict[int, WeaveVertex]
    edges: dict[int, WeaveEdge]

    def labels_at(self, v: int) -> tuple[int, ...]:
        return tuple(self.edges[e].label for e in self.vertices[v].rotation)

    def count(self, kind: str) -> int:
        return sum(1 for x in self.vertices.values() if x.kind == kind)

    def endpoints(self) -> list[int]:
        return sorted((v for v, x in self.vertices.items() if x.kind == ENDPOINT),
                      key=lambda v: self.vertices[v].slot)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeaveGraph):
            return NotImplemented
        return (self.n, self.k, self.vertices, self.edges) == (other.n, other.k, other.vertices, other.edges)


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[int, ...]

    def __str__(self) -> str:
        return " ".join(f"s{i}" for i in self.letters)

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        return cls(tuple(int(tok[1:]) for tok in text.split()))

    @classmethod
    def torus(cls, k: int, n: int) -> "BraidWord":
        return cls(tuple(range(1, k)) * n)


def assemble_weave(G: PlabicGraph, shifts: list[TShift]) -> WeaveGraph:
    """Union of the layers with provenance merges."""
    n, k = G.n, len(shifts) + 1
    layers = [s.graph for s in shifts]
    gid: dict[tuple[int, int], int] = {}
    vertices: dict[int, WeaveVertex] = {}
    edges: dict[int, WeaveEdge] = {}
    for i, L in enumerate(layers, 1):
        if i >= 2:
            images = set(shifts[i - 1].provenance.values())
            whites = {v for v in L.color if L.color[v] == WHITE}
            if images != whites:
                raise WeaveError(f"layer {i}: white vertices do not match the recolored blacks of layer {i - 1}")
    for i, L in enumerate(layers, 1):
        for v in L.internal:
            if i >= 2 and L.color[v] == WHITE:
                continue
            gid[(i, v)] = len(gid)
        for v in L.boundary:
            gid[(i, v)] = len(gid)
    for i in range(2, k):
        for b, w in shifts[i - 1].provenance.items():
            if (i - 1, b) not in gid:
                raise WeaveError(f"layer {i - 1} has no black vertex {b}")
            gid[(i, w)] = gid[(i - 1, b)]
    edge_gid: dict[tuple[int, int], int] = {}
    for i, L in enumerate(layers, 1):
        for e in sorted(L.ends):
            a, b = L.ends[e]
            edge_gid[(i, e)] = len(edges)
            edges[len(edges)] = WeaveEdge(i, (gid[(i, a)], gid[(i, b)]))
    rot = lambda i, v: tuple(edge_gid[(i, e)] for e in layers[i - 1].rotation[v])  # noqa: E731
    for i, L in enumerate(layers, 1):
        for p, v in enumerate(L.boundary, 1):
            vertices[gid[(i, v)]] = WeaveVertex(ENDPOINT, rot(i, v), (p, i), ((i, v),))
        for v in L.internal:
            g = gid[(i, v)]
            if L.color[v] == WHITE and i >= 2:
                continue
            if L.color[v] == BLACK and i < k - 1:
                w = shifts[i].provenance[v]
                top, bottom = rot(i, v), rot(i + 1, w)
                if len(top) != 3 or len(bottom) != 3:
                    raise WeaveError(f"layer {i}: vertex {v} is not trivalent")
                inter = tuple(x for pair in zip(top, bottom) for x in pair)
                vertices[g] = WeaveVertex(HEXAVALENT, inter, None, ((i, v), (i + 1, w)))
            else:
                vertices[g] = WeaveVertex(TRIVALENT, rot(i, v), None, ((i, v),))
    return WeaveGraph(n, k, vertices, edges)


def build_weave(G: PlabicGraph, policy: EquivariantResolution | None = None) -> WeaveGraph:
    if G.rank() < 2:
        raise WeaveError("a weave needs rank at least 2")
    return assemble_weave(G, iterate_t_shift(G, policy))


def validate_ngraph(W: WeaveGraph) -> list[str]:
    problems = []
    seen: dict[int, int] = {}
    for v, x in W.vertices.items():
        labels = W.labels_at(v)
        for e in x.rotation:
            if e not in W.edges or v not in W.edges[e].ends:
                problems.append(f"vertex {v} lists edge {e} that does not end there")
            seen[e] = seen.get(e, 0) + 1
        if x.kind == TRIVALENT:
            if len(labels) != 3 or len(set(labels)) != 1:
                problems.append(f"trivalent vertex {v} has labels {labels}")
        elif x.kind == HEXAVALENT:
            ok = len(labels) == 6 and len(set(labels)) == 2
            if ok:
                a, b = labels[0], labels[1]
                ok = abs(a - b) == 1 and all(labels[j] == (a if j % 2 == 0 else b) for j in range(6))
            if not ok:
                problems.append(f"hexavalent vertex {v} has labels {labels}, not alternating adjacent generators")
        elif x.kind == ENDPOINT:
            if len(labels) != 1 or x.slot is None or labels[0] != x.slot[1]:
                problems.append(f"endpoint {v} at slot {x.slot} has labels {labels}")
        else:
            problems.append(f"vertex {v} has unknown kind {x.kind}")
    for e, edge in W.edges.items():
        if seen.get(e, 0) != 2:
            problems.append(f"edge {e} appears {seen.get(e, 0)} times in rotations")
        if not 1 <= edge.label <= W.k - 1:
            problems.append(f"edge {e} has label s{edge.label} outside 1..{W.k - 1}")
    if problems:
        return problems
    # each label class must itself be a planar map on the marked disk
    for i in range(1, W.k):
        ends = {e: x.ends for e, x in W.edges.items() if x.label == i}
        rotation = {v: tuple(e for e in x.rotation if e in ends) for v, x in W.vertices.items()}
        rotation = {v: r for v, r in rotation.items() if r}
        points = sorted((v for v in rotation if W.vertices[v].kind == ENDPOINT), key=lambda v: W.vertices[v].slot)
        color = {v: WHITE for v in rotation if W.vertices[v].kind != ENDPOINT}
        try:
            layer = PlabicGraph(len(points), color, rotation, ends, points)
            problems += [f"layer s{i}: {p}" for p in layer.validate()]
        except (PlabicError, KeyError) as exc:
            problems.append(f"layer s{i}: {exc}")
    return problems


def boundary_braid(W: WeaveGraph) -> BraidWord:
    letters = []
    for v in W.endpoints():
        x = W.vertices[v]
        if x.slot is None:
            raise WeaveError(f"endpoint {v} has no slot")
        letters.append(W.edges[x.rotation[0]].label)
    return BraidWord(tuple(letters))


# -- symmetric pipeline --------------------------------------------------------------


@dataclass
class WeaveRun:
    trivalent: PlabicGraph
    sites: list[ResolutionSite]
    shifts: list[TShift]
    weave: WeaveGraph | None


def _weave_run(G: PlabicGraph, policy: EquivariantResolution) -> WeaveRun:
    H, sites = resolve_trivalent(G, policy)
    shifts = iterate_t_shift(H, policy) if H.rank() >= 2 else []
    weave = assemble_weave(H, shifts) if shifts else None
    return WeaveRun(H, sites, shifts, weave)


def _fixed_sites(run: WeaveRun) -> list[dict]:
    out = [dict(layer=0, **s.as_dict()) for s in run.sites if s.fixed]
    for i, step in enumerate(run.shifts, 1):
        out += [dict(layer=i, **s.as_dict()) for s in step.sites if s.fixed]
    return out


def weave_certificate(G: PlabicGraph, ell: int, base: WeaveRun | None = None) -> SymmetryCertificate:
    """Two-run certificate: the weave built with every rotation-fixed vertex
    resolved the rotated way equals the rotated weave.

    The twist only decides between tied corners, and ties happen exactly at
    vertices fixed by the rotation, so the two runs differ only at the listed
    fixed sites.  The certificate is the layer-by-layer isomorphism that
    sends slot ``(p, j)`` to ``(p + ell, j)`` and shifts every label by ``ell``.
    """
    a = base or _weave_run(G, EquivariantResolution(ell, 0))
    b = _weave_run(G, EquivariantResolution(ell, 1))
    fixed = _fixed_sites(a)
    fail = lambda why: SymmetryCertificate("weave", ell, False, {}, witness=why, fixed_sites=fixed)  # noqa: E731
    graphs_a = [a.trivalent] + [s.graph for s in a.shifts]
    graphs_b = [b.trivalent] + [s.graph for s in b.shifts]
    isos = []
    try:
        for i, (x, y) in enumerate(zip(graphs_a, graphs_b)):
            isos.append(boundary_isomorphism(x, y, shift=ell, label_shift=ell))
    except IsomorphismError as exc:
        return fail(f"layer {i}: {exc}")
    if a.weave is None:
        return SymmetryCertificate("weave", ell, True, {}, vertex_map={}, fixed_sites=fixed)
    # transport weave vertices through the per-layer isomorphisms
    where_b = {o: v for v, x in b.weave.vertices.items() for o in x.origin}
    vmap: dict[int, int] = {}
    for v, x in a.weave.vertices.items():
        images = {where_b[(i, isos[i].vertices[u])] for i, u in x.origin}
        if len(images) != 1:
            return fail(f"weave vertex {v} splits under the rotation")
        vmap[v] = images.pop()
        y = b.weave.vertices[vmap[v]]
        if x.kind != y.kind:
            return fail(f"weave vertex {v} ({x.kind}) maps to a {y.kind} vertex")
        if x.kind == ENDPOINT and y.slot != (mod1(x.slot[0] + ell, G.n), x.slot[1]):
            return fail(f"slot {x.slot} maps to {y.slot}")
    if len(set(vmap.values())) != len(b.weave.vertices):
        return fail("weave vertex map is not a bijection")
    label_map = {}
    for i, iso in enumerate(isos):
        la, lb = graphs_a[i].face_labels(), graphs_b[i].face_labels()
        for f, g in iso.faces.items():
            if f in la:
                label_map[la[f].compact()] = lb[g].compact()
    return SymmetryCertificate("weave", ell, True, label_map, vertex_map=vmap, fixed_sites=fixed)


@dataclass
class PipelineReport:
    params: Params
    order: tuple[int, ...]
    collection: Collection
    tiling: PlabicTiling
    graph: PlabicGraph
    trivalent: PlabicGraph
    layers: list[PlabicGraph]
    weave: WeaveGraph | None
    braid: BraidWord
    ranks: list[int]
    certificates: dict[str, SymmetryCertificate]
    fixed_sites: list[dict]
    validation: list[str]
    conventions: dict = field(default_factory=lambda: dict(CONVENTIONS))
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.validation and all(c.ok for c in self.certificates.values())


def symmetric_weave_pipeline(k: int, n: int, ell: int, order: tuple[int, ...] | None = None) -> PipelineReport:
    started = time.perf_counter()
    params = Params(k, n, ell)
    if not params.feasible:
        raise InfeasibleError(f"(k, n, ell) = ({k}, {n}, {ell}): k mod d = {k % params.d} is not in {{0, 1, d-1}}")
    order = tuple(order) if order is not None else default_order(ell)
    D = generate(k, n, ell, order)
    T = build_tiling(D)
    G = dual_plabic_graph(T)
    run = _weave_run(G, EquivariantResolution(ell, 0))
    layers = [s.graph for s in run.shifts]
    certificates = {
        "tiling": rotational_symmetry_certificate(T, ell),
        "graph": rotational_symmetry_certificate(G, ell),
        "weave": weave_certificate(G, ell, run),
    }
    validation = validate_ngraph(run.weave) if run.weave is not None else []
    braid = boundary_braid(run.weave) if run.weave is not None else BraidWord(())
    return PipelineReport(
        params=params, order=order, collection=D, tiling=T, graph=G, trivalent=run.trivalent,
        layers=layers, weave=run.weave, braid=braid,
        ranks=[run.trivalent.rank()] + [L.rank() for L in layers],
        certificates=certificates, fixed_sites=_fixed_sites(run), validation=validation,
        seconds=time.perf_counter() - started,
    )
