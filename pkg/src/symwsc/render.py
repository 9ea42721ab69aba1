"""SVG and TikZ renderers.

Coordinates are for drawing only.  Tiling vertices sit at ``V_S``; dual
graphs put each vertex at the barycenter of its clique; other graphs and
weaves use a barycentric (Tutte) layout with the marked points pinned on a
circle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .core import Collection
from .plabic import PlabicGraph, clique_tag
from .tiling import WHITE, PlabicTiling, build_tiling, polygon_vertex, position
from .weave import ENDPOINT, HEXAVALENT, PipelineReport, WeaveGraph

Point = tuple[float, float]

LAYER_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
FACE_FILL = {"white": "#f2f2f2", "black": "#6e6e6e"}


class RenderError(ValueError):
    pass


@dataclass
class Scene:
    polygons: list[tuple[list[Point], str, str]] = field(default_factory=list)
    segments: list[tuple[Point, Point, str, str]] = field(default_factory=list)
    discs: list[tuple[Point, str, str]] = field(default_factory=list)
    texts: list[tuple[Point, str, str]] = field(default_factory=list)

    def points(self) -> list[Point]:
        pts = [p for poly, _, _ in self.polygons for p in poly]
        pts += [p for a, b, _, _ in self.segments for p in (a, b)]
        pts += [p for p, _, _ in self.discs] + [p for p, _, _ in self.texts]
        return pts or [(0.0, 0.0)]


def _tutte(rotation: dict[int, tuple[int, ...]], ends: dict[int, tuple[int, int]],
           pinned: dict[int, Point]) -> dict[int, Point]:
    free = sorted(v for v in rotation if v not in pinned)
    idx = {v: i for i, v in enumerate(free)}
    A = np.zeros((len(free), len(free)))
    b = np.zeros((len(free), 2))
    for v in free:
        i = idx[v]
        for e in rotation[v]:
            x, y = ends[e]
            u = y if x == v else x
            A[i, i] += 1
            if u in pinned:
                b[i] += pinned[u]
            else:
                A[i, idx[u]] -= 1
    sol = np.linalg.lstsq(A, b, rcond=None)[0] if free else np.zeros((0, 2))
    pos = dict(pinned)
    for v in free:
        pos[v] = (float(sol[idx[v], 0]), float(sol[idx[v], 1]))
    return pos


def _circle(n: int, i: float, radius: float) -> Point:
    x, y = polygon_vertex(i, n)
    return radius * x, radius * y


def tiling_scene(T: PlabicTiling) -> Scene:
    sc = Scene()
    for f in T.faces:
        sc.polygons.append(([position(S) for S in f.members], f"face {f.color}", FACE_FILL[f.color]))
    for S, U in T.edges:
        sc.segments.append((position(S), position(U), "edge", "#000000"))
    for S in T.vertices:
        sc.discs.append((position(S), "vertex", "#000000"))
        sc.texts.append((position(S), S.compact(), "label"))
    return sc


def graph_scene(G: PlabicGraph, tiling: PlabicTiling | None = None) -> Scene:
    sc = Scene()
    pos: dict[int, Point] = {}
    if tiling is not None:
        centre = {clique_tag(f.color, f.core, G.n): f for f in tiling.faces}
        for v in G.color:
            f = centre.get(G.tags.get(v))
            if f is not None:
                xs = [position(S) for S in f.members]
                pos[v] = (sum(x for x, _ in xs) / len(xs), sum(y for _, y in xs) / len(xs))
        for i in range(1, G.n + 1):
            a, b = (position(S) for S in tiling.boundary_edge(i))
            pos[G.boundary[i - 1]] = (0.55 * (a[0] + b[0]), 0.55 * (a[1] + b[1]))
    if len(pos) != len(G.rotation):
        radius = max(G.rank(), 1) * 1.2
        pins = {G.boundary[i - 1]: _circle(G.n, i + 0.5, radius) for i in range(1, G.n + 1)}
        pos = _tutte(G.rotation, G.ends, pins)
    for e, (a, b) in sorted(G.ends.items()):
        sc.segments.append((pos[a], pos[b], "edge", "#000000"))
    for f, lab in sorted(G.face_labels().items()):
        verts = [pos[d[1]] for d in G.faces[f]]
        c = (sum(x for x, _ in verts) / len(verts), sum(y for _, y in verts) / len(verts))
        sc.texts.append((c, lab.compact(), "label"))
    for v in sorted(G.rotation):
        if v in G.color:
            sc.discs.append((pos[v], f"vertex {G.color[v]}", "#ffffff" if G.color[v] == WHITE else "#000000"))
        else:
            sc.discs.append((pos[v], "marked", "#888888"))
            sc.texts.append((pos[v], str(G.point(v)), "point"))
    return sc


def weave_scene(W: WeaveGraph) -> Scene:
    sc = Scene()
    radius = max(W.k, 2) * 1.2
    step = 0.6 / max(W.k - 1, 1)
    pins = {}
    for v, x in W.vertices.items():
        if x.kind == ENDPOINT:
            p, j = x.slot
            pins[v] = _circle(W.n, p + 0.5 + (j - 1) * step, radius)
    rotation = {v: x.rotation for v, x in W.vertices.items()}
    ends = {e: x.ends for e, x in W.edges.items()}
    pos = _tutte(rotation, ends, pins)
    for e, x in sorted(W.edges.items()):
        color = LAYER_COLORS[(x.label - 1) % len(LAYER_COLORS)]
        sc.segments.append((pos[x.ends[0]], pos[x.ends[1]], f"edge s{x.label}", color))
    for v, x in sorted(W.vertices.items()):
        if x.kind == ENDPOINT:
            p, j = x.slot
            a = pins[v]
            out = (a[0] * 1.08, a[1] * 1.08)
            sc.segments.append((a, out, f"tick s{j}", LAYER_COLORS[(j - 1) % len(LAYER_COLORS)]))
        elif x.kind == HEXAVALENT:
            sc.discs.append((pos[v], "vertex hexavalent", "#ffffff"))
        else:
            label = W.edges[x.rotation[0]].label
            sc.discs.append((pos[v], f"vertex trivalent s{label}", LAYER_COLORS[(label - 1) % len(LAYER_COLORS)]))
    return sc


def scene_for(obj) -> Scene:
    if isinstance(obj, Collection):
        return tiling_scene(build_tiling(obj))
    if isinstance(obj, PlabicTiling):
        return tiling_scene(obj)
    if isinstance(obj, PlabicGraph):
        return graph_scene(obj)
    if isinstance(obj, WeaveGraph):
        return weave_scene(obj)
    if isinstance(obj, PipelineReport):
        if obj.weave is None:
            return graph_scene(obj.graph, obj.tiling)
        return weave_scene(obj.weave)
    raise RenderError(f"cannot render {type(obj).__name__}")


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def to_svg(sc: Scene, size: int = 480) -> str:
    pts = sc.points()
    xmin, xmax = min(x for x, _ in pts), max(x for x, _ in pts)
    ymin, ymax = min(y for _, y in pts), max(y for _, y in pts)
    span = max(xmax - xmin, ymax - ymin, 1e-9)
    margin = 24
    s = (size - 2 * margin) / span

    def tr(p: Point) -> str:
        return f"{_fmt(margin + (p[0] - xmin) * s)},{_fmt(margin + (ymax - p[1]) * s)}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for poly, cls, fill in sc.polygons:
        out.append(f'<polygon class="{cls}" points="{" ".join(tr(p) for p in poly)}" fill="{fill}" stroke="#000000"/>')
    for a, b, cls, stroke in sc.segments:
        (x1, y1), (x2, y2) = tr(a).split(","), tr(b).split(",")
        width = 2.5 if cls.startswith("tick") else 1.5
        out.append(f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="{width}"/>')
    for p, cls, fill in sc.discs:
        x, y = tr(p).split(",")
        out.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="4" fill="{fill}" stroke="#000000"/>')
    for p, text, cls in sc.texts:
        x, y = tr(p).split(",")
        out.append(f'<text class="{cls}" x="{x}" y="{y}" font-size="10" text-anchor="middle">{escape(text)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def to_tikz(sc: Scene) -> str:
    def c(h: str) -> str:
        r, g, b = (int(h[i:i + 2], 16) for i in (1, 3, 5))
        return f"{{rgb,255:red,{r};green,{g};blue,{b}}}"

    def p(q: Point) -> str:
        return f"({_fmt(q[0])},{_fmt(q[1])})"

    out = ["\\begin{tikzpicture}[scale=1]"]
    for poly, cls, fill in sc.polygons:
        out.append(f"% {cls}")
        out.append(f"\\filldraw[fill={c(fill)}] " + " -- ".join(p(q) for q in poly) + " -- cycle;")
    for a, b, cls, stroke in sc.segments:
        width = "very thick" if cls.startswith("tick") else "thick"
        out.append(f"\\draw[{width}, draw={c(stroke)}] {p(a)} -- {p(b)}; % {cls}")
    for q, cls, fill in sc.discs:
        out.append(f"\\filldraw[fill={c(fill)}] {p(q)} circle (2pt); % {cls}")
    for q, text, cls in sc.texts:
        out.append(f"\\node[font=\\tiny] at {p(q)} {{{text}}}; % {cls}")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def render(obj, fmt: str = "svg") -> str:
    sc = scene_for(obj)
    if fmt == "svg":
        return to_svg(sc)
    if fmt == "tikz":
        return to_tikz(sc)
    raise RenderError(f"unknown format {fmt!r}; use svg or tikz")
