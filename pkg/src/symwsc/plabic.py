"""Plabic graphs as rotation systems on a marked disk.

A graph stores, for every vertex, the counterclockwise cyclic list of its
edge ids.  Marked points ``1..n`` sit counterclockwise on the boundary
circle; the boundary arcs are implicit edges with negative ids (arc ``-i``
runs from point ``i`` to point ``i+1``).  Darts are ``(edge, tail)`` pairs;
the face of a dart is the one on its left.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from .core import Collection, KSubset, mod1
from .tiling import BLACK, WHITE, PlabicTiling

Dart = tuple[int, int]


class PlabicError(ValueError):
    pass


class MoveError(PlabicError):
    pass


class PlabicGraph:
    def __init__(
        self,
        n: int,
        color: Mapping[int, str],
        rotation: Mapping[int, Iterable[int]],
        ends: Mapping[int, tuple[int, int]],
        boundary: Iterable[int],
        tags: Mapping[int, Hashable] | None = None,
        edge_tags: Mapping[int, Hashable] | None = None,
    ):
        self.n = n
        self.color = dict(color)
        self.rotation = {v: tuple(r) for v, r in rotation.items()}
        self.ends = dict(ends)
        self.boundary = tuple(boundary)
        self.tags = dict(tags or {})
        self.edge_tags = dict(edge_tags or {})
        self._point = {v: i + 1 for i, v in enumerate(self.boundary)}
        if len(self.boundary) != n:
            raise PlabicError(f"expected {n} marked points, got {len(self.boundary)}")

    # -- basic structure ----------------------------------------------------

    def is_boundary(self, v: int) -> bool:
        return v in self._point

    def point(self, v: int) -> int:
        """Marked point number of boundary vertex ``v``."""
        return self._point[v]

    @property
    def internal(self) -> list[int]:
        return sorted(self.color)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def endpoints(self, e: int) -> tuple[int, int]:
        if e < 0:
            i = -e
            return self.boundary[i - 1], self.boundary[i % self.n]
        return self.ends[e]

    def other(self, e: int, v: int) -> int:
        a, b = self.endpoints(e)
        if a == v:
            return b
        if b == v:
            return a
        raise PlabicError(f"edge {e} is not incident to {v}")

    def full_rotation(self, v: int) -> tuple[int, ...]:
        if v in self._point:
            i = self._point[v]
            return (-i, self.rotation[v][0], -mod1(i - 1, self.n))
        return self.rotation[v]

    def head(self, dart: Dart) -> int:
        return self.other(dart[0], dart[1])

    def next_in_face(self, dart: Dart) -> Dart:
        v = self.head(dart)
        R = self.full_rotation(v)
        return R[R.index(dart[0]) - 1], v

    def boundary_edge(self, i: int) -> int:
        return self.rotation[self.boundary[i - 1]][0]

    # -- faces --------------------------------------------------------------

    @cached_property
    def _face_data(self) -> tuple[list[tuple[Dart, ...]], dict[Dart, int]]:
        darts = []
        for e in self.ends:
            a, b = self.ends[e]
            darts += [(e, a), (e, b)]
        for i in range(1, self.n + 1):
            darts += [(-i, self.boundary[i - 1]), (-i, self.boundary[i % self.n])]
        faces: list[tuple[Dart, ...]] = []
        owner: dict[Dart, int] = {}
        for d in darts:
            if d in owner:
                continue
            cycle = []
            x = d
            while x not in owner:
                owner[x] = len(faces)
                cycle.append(x)
                x = self.next_in_face(x)
                if len(cycle) > 2 * len(darts) + 2:
                    raise PlabicError("face traversal does not close")
            if x != d:
                raise PlabicError("face traversal does not close")
            faces.append(tuple(cycle))
        return faces, owner

    @property
    def faces(self) -> list[tuple[Dart, ...]]:
        """All faces as dart cycles, the outer one included."""
        return self._face_data[0]

    def face_of(self, dart: Dart) -> int:
        return self._face_data[1][dart]

    def reverse(self, dart: Dart) -> Dart:
        return dart[0], self.head(dart)

    def face_vertices(self, f: int) -> list[int]:
        return [d[1] for d in self.faces[f]]

    @cached_property
    def outer_face(self) -> int:
        # the reversed arc from point 2 back to point 1
        return self.face_of((-1, self.boundary[1 % self.n]))

    @property
    def inner_faces(self) -> list[int]:
        return [f for f in range(len(self.faces)) if f != self.outer_face]

    # -- strands ------------------------------------------------------------

    def trip(self, i: int) -> list[Dart]:
        """Zig-zag strand from marked point ``i``: it leaves a black vertex by
        the clockwise neighbour of the arriving edge, a white one by the
        counterclockwise neighbour."""
        b = self.boundary[i - 1]
        dart = (self.rotation[b][0], b)
        path = [dart]
        limit = 2 * len(self.ends) + 2
        while True:
            v = self.head(dart)
            if v in self._point:
                return path
            R = self.rotation[v]
            j = R.index(dart[0])
            e = R[j - 1] if self.color[v] == BLACK else R[(j + 1) % len(R)]
            dart = (e, v)
            path.append(dart)
            if len(path) > limit:
                raise PlabicError(f"strand from {i} does not terminate")

    def trip_permutation(self) -> dict[int, int]:
        return {i: self.point(self.head(self.trip(i)[-1])) for i in range(1, self.n + 1)}

    def _side_of_trip(self, path: list[Dart]) -> dict[int, bool]:
        """Map inner face -> True if it lies left of the strand."""
        side: dict[int, bool] = {}
        cut = {d[0] for d in path}
        queue = deque()
        for d in path:
            for f, left in ((self.face_of(d), True), (self.face_of(self.reverse(d)), False)):
                if f == self.outer_face:
                    continue
                if side.get(f, left) != left:
                    raise PlabicError("strand has faces on both sides (self-crossing)")
                if f not in side:
                    side[f] = left
                    queue.append(f)
        while queue:
            f = queue.popleft()
            for d in self.faces[f]:
                if d[0] < 0 or d[0] in cut:
                    continue
                g = self.face_of(self.reverse(d))
                if g == self.outer_face:
                    continue
                if g in side:
                    if side[g] != side[f]:
                        raise PlabicError("inconsistent strand sides")
                    continue
                side[g] = side[f]
                queue.append(g)
        return side

    @cached_property
    def _labels(self) -> dict[int, frozenset[int]]:
        labels: dict[int, set[int]] = {f: set() for f in self.inner_faces}
        for i in range(1, self.n + 1):
            path = self.trip(i)
            j = self.point(self.head(path[-1]))
            for f, left in self._side_of_trip(path).items():
                if not left:
                    labels[f].add(j)
        return {f: frozenset(s) for f, s in labels.items()}

    def face_label(self, f: int) -> KSubset:
        return KSubset.of(self._labels[f], self.n)

    def face_labels(self) -> dict[int, KSubset]:
        """Inner face -> label: the targets of the strands passing it on their right."""
        return {f: self.face_label(f) for f in self.inner_faces}

    def labels(self) -> Collection:
        labs = list(self.face_labels().values())
        ks = {len(x) for x in labs}
        if len(ks) != 1:
            raise PlabicError(f"face labels have mixed sizes {sorted(ks)}")
        return Collection(labs, self.n, ks.pop())

    def rank(self) -> int:
        return self.labels().k

    def face_by_label(self, label: KSubset) -> int:
        hits = [f for f, lab in self.face_labels().items() if lab == label]
        if len(hits) != 1:
            raise PlabicError(f"label {label} names {len(hits)} faces")
        return hits[0]

    def corner_faces(self, v: int) -> list[int]:
        """Faces around ``v``: entry ``j`` lies between edges ``j`` and ``j+1``
        of the counterclockwise rotation."""
        R = self.rotation[v]
        out = []
        for j in range(len(R)):
            e = R[(j + 1) % len(R)]
            out.append(self.face_of((e, self.other(e, v))))
        return out

    # -- checks -------------------------------------------------------------

    def validate(self) -> list[str]:
        problems = []
        seen: dict[int, int] = {}
        for v, R in self.rotation.items():
            for e in R:
                if e not in self.ends:
                    problems.append(f"vertex {v} lists unknown edge {e}")
                    continue
                if v not in self.ends[e]:
                    problems.append(f"vertex {v} lists edge {e} it is not incident to")
                seen[e] = seen.get(e, 0) + 1
        for e, (a, b) in self.ends.items():
            if a == b:
                problems.append(f"edge {e} is a loop")
            if seen.get(e, 0) != 2:
                problems.append(f"edge {e} appears {seen.get(e, 0)} times in rotations")
        for i, b in enumerate(self.boundary, 1):
            if len(self.rotation.get(b, ())) != 1:
                problems.append(f"marked point {i} has degree {len(self.rotation.get(b, ()))}")
            elif self.is_boundary(self.other(self.rotation[b][0], b)):
                problems.append(f"marked point {i} is joined to another marked point")
        for v in self.color:
            if self.degree(v) < 2:
                problems.append(f"internal vertex {v} has degree {self.degree(v)} (lollipop)")
        if not problems:
            try:
                F = len(self.faces)
            except PlabicError as exc:
                return [str(exc)]
            V = len(self.rotation)
            E = len(self.ends) + self.n
            if V - E + F != 2:
                problems.append(f"Euler relation fails: V - E + F = {V - E + F}")
        return problems

    def is_trivalent(self) -> bool:
        return all(self.degree(v) == 3 for v in self.color)

    # -- construction helpers ----------------------------------------------

    def copy(self, **changes) -> "PlabicGraph":
        data = dict(
            n=self.n, color=self.color, rotation=self.rotation, ends=self.ends,
            boundary=self.boundary, tags=self.tags, edge_tags=self.edge_tags,
        )
        data.update(changes)
        return PlabicGraph(**data)

    def next_edge_id(self) -> int:
        return max(self.ends, default=-1) + 1

    def next_vertex_id(self) -> int:
        return max(self.rotation, default=-1) + 1

    def _key(self) -> tuple:
        return (self.n, self.color, self.rotation, self.ends, self.boundary, self.tags, self.edge_tags)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlabicGraph):
            return NotImplemented
        return self._key() == other._key()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        w = sum(1 for c in self.color.values() if c == WHITE)
        return f"PlabicGraph(n={self.n}, white={w}, black={len(self.color) - w}, edges={len(self.ends)})"


# -- duality ------------------------------------------------------------------


def clique_tag(color: str, core: Iterable[int], n: int) -> str:
    return ("W" if color == WHITE else "B") + "(" + KSubset.of(core, n).compact() + ")"


def dual_plabic_graph(T: PlabicTiling, keep_bivalent: bool = False) -> PlabicGraph:
    """Dual of a plabic tiling.

    Every clique with at least two members becomes a vertex of its color and
    every tiling edge a graph edge.  Two-member cliques only occur along the
    boundary of the n-gon; they give bivalent vertices between a face vertex
    and a marked point, removed by the deletion move unless ``keep_bivalent``.
    Marked point ``i`` crosses the boundary edge ``(I_i, I_{i+1})``.
    """
    n = T.n
    color: dict[int, str] = {}
    rotation: dict[int, tuple[int, ...]] = {}
    ends: dict[int, tuple[int, int]] = {}
    tags: dict[int, str] = {}
    edge_tags: dict[int, tuple[str, str]] = {}
    F = len(T.faces)
    boundary = list(range(F, F + n))
    fresh = F + n
    bivalent: list[int] = []

    def new_edge(a: int, b: int, S: KSubset, U: KSubset) -> int:
        e = len(ends)
        ends[e] = (a, b)
        edge_tags[e] = tuple(sorted((S.compact(), U.compact())))
        return e

    if n == 2:
        S, U = T.boundary_edge(1)
        w, b = fresh, fresh + 1
        color[w], color[b] = WHITE, BLACK
        tags[w] = clique_tag(WHITE, S.as_set() & U.as_set(), n)
        tags[b] = clique_tag(BLACK, S.as_set() | U.as_set(), n)
        e0, e1, e2 = new_edge(boundary[0], w, S, U), new_edge(w, b, S, U), new_edge(b, boundary[1], S, U)
        rotation = {boundary[0]: (e0,), w: (e0, e1), b: (e1, e2), boundary[1]: (e2,)}
        bivalent.append(b)
    else:
        point_of = {T.boundary_edge(i): i for i in range(1, n + 1)}
        shared: dict[frozenset, int] = {}
        for f, clique in enumerate(T.faces):
            color[f] = clique.color
            tags[f] = clique_tag(clique.color, clique.core, n)
            rot = []
            for S, U in clique.boundary():
                g = T.face_of_dart.get((U, S))
                if g is None:
                    i = point_of.get((S, U))
                    if i is None:
                        raise PlabicError(f"unpaired tiling edge {S}->{U} is not on the boundary")
                    other = BLACK if clique.color == WHITE else WHITE
                    core = S.as_set() | U.as_set() if other == BLACK else S.as_set() & U.as_set()
                    t = fresh
                    fresh += 1
                    color[t] = other
                    tags[t] = clique_tag(other, core, n)
                    e = new_edge(f, t, S, U)
                    e2 = new_edge(t, boundary[i - 1], S, U)
                    rotation[t] = (e, e2)
                    rotation[boundary[i - 1]] = (e2,)
                    bivalent.append(t)
                else:
                    key = frozenset((S, U))
                    if key not in shared:
                        shared[key] = new_edge(f, g, S, U)
                    e = shared[key]
                rot.append(e)
            rotation[f] = tuple(rot)
    missing = [i for i, b in enumerate(boundary, 1) if b not in rotation]
    if missing:
        raise PlabicError(f"marked points {missing} have no adjacent face")
    G = PlabicGraph(n, color, rotation, ends, boundary, tags, edge_tags)
    if not keep_bivalent:
        for v in bivalent:
            G = apply_move(G, DeleteBivalent(v))
    return G


# -- moves ----------------------------------------------------------------------


@dataclass(frozen=True)
class DeleteBivalent:
    """Remove a bivalent internal vertex, fusing its two edges."""

    vertex: int


@dataclass(frozen=True)
class ContractSameColor:
    """Contract an edge whose endpoints are internal and of the same color."""

    edge: int


@dataclass(frozen=True)
class ExpandVertex:
    """Inverse of contraction: the ``count`` consecutive edges of ``vertex``
    starting at rotation index ``start`` move to a new vertex of the same
    color, joined to ``vertex`` by a new edge."""

    vertex: int
    start: int
    count: int


@dataclass(frozen=True)
class SquareMove:
    """Recolor the four trivalent corners of a quadrilateral face.

    ``face`` is a face label (stable across graphs) or a face index.
    """

    face: KSubset | int


Move = DeleteBivalent | ContractSameColor | ExpandVertex | SquareMove


def _swap(rot: tuple[int, ...], old: int, new: int) -> tuple[int, ...]:
    return tuple(new if e == old else e for e in rot)


def _without(d: Mapping, *keys) -> dict:
    return {a: b for a, b in d.items() if a not in keys}


def _delete_bivalent(G: PlabicGraph, v: int) -> PlabicGraph:
    if v not in G.color:
        raise MoveError(f"{v} is not an internal vertex")
    if G.degree(v) != 2:
        raise MoveError(f"vertex {v} has degree {G.degree(v)}, not 2")
    a, b = G.rotation[v]
    x, y = G.other(a, v), G.other(b, v)
    if x == y:
        raise MoveError(f"deleting {v} would create a loop at {x}")
    if G.is_boundary(x) and G.is_boundary(y):
        raise MoveError(f"deleting {v} would join two marked points")
    rotation = _without(G.rotation, v)
    rotation[y] = _swap(rotation[y], b, a)
    ends = _without(G.ends, b)
    ends[a] = (x, y)
    return G.copy(
        color=_without(G.color, v), rotation=rotation, ends=ends,
        tags=_without(G.tags, v), edge_tags=_without(G.edge_tags, b),
    )


def _after(rot: tuple[int, ...], e: int) -> tuple[int, ...]:
    j = rot.index(e)
    return rot[j + 1:] + rot[:j]


def _contract(G: PlabicGraph, e: int) -> PlabicGraph:
    if e not in G.ends:
        raise MoveError(f"unknown edge {e}")
    u, v = G.ends[e]
    if u not in G.color or v not in G.color:
        raise MoveError(f"edge {e} touches a marked point")
    if G.color[u] != G.color[v]:
        raise MoveError(f"edge {e} joins vertices of different colors")
    if sum(1 for x in G.rotation[u] if x in G.rotation[v]) > 1:
        raise MoveError(f"edge {e} is parallel to another edge; contraction would create a loop")
    merged = _after(G.rotation[u], e) + _after(G.rotation[v], e)
    rotation = _without(G.rotation, v)
    rotation[u] = merged
    ends = _without(G.ends, e)
    for x in G.rotation[v]:
        if x != e:
            p, q = ends[x]
            ends[x] = (u if p == v else p, u if q == v else q)
    return G.copy(
        color=_without(G.color, v), rotation=rotation, ends=ends,
        tags=_without(G.tags, v), edge_tags=_without(G.edge_tags, e),
    )


def _expand(G: PlabicGraph, v: int, start: int, count: int) -> PlabicGraph:
    if v not in G.color:
        raise MoveError(f"{v} is not an internal vertex")
    R = G.rotation[v]
    m = len(R)
    if not 1 <= count <= m - 1:
        raise MoveError(f"cannot split {count} of {m} edges off vertex {v}")
    block = tuple(R[(start + i) % m] for i in range(count))
    rest = tuple(R[(start + count + i) % m] for i in range(m - count))
    w, h = G.next_vertex_id(), G.next_edge_id()
    rotation = dict(G.rotation)
    rotation[w] = block + (h,)
    rotation[v] = (h,) + rest
    ends = dict(G.ends)
    ends[h] = (v, w)
    for x in block:
        p, q = ends[x]
        ends[x] = (w if p == v else p, w if q == v else q)
    color = dict(G.color)
    color[w] = G.color[v]
    tags = dict(G.tags)
    if v in tags:
        tags[w] = tags[v]
    return G.copy(color=color, rotation=rotation, ends=ends, tags=tags)


def _face_index(G: PlabicGraph, face: KSubset | int) -> int:
    if isinstance(face, KSubset):
        return G.face_by_label(face)
    if face not in G.inner_faces:
        raise MoveError(f"{face} is not an inner face")
    return face


def square_corners(G: PlabicGraph, f: int) -> list[int]:
    """Corners of face ``f`` if a square move applies there, else raise."""
    darts = G.faces[f]
    verts = [d[1] for d in darts]
    if len(darts) != 4:
        raise MoveError(f"face {f} has {len(darts)} sides, not 4")
    if any(v not in G.color for v in verts) or len(set(verts)) != 4:
        raise MoveError(f"face {f} touches the boundary or repeats a vertex")
    if any(G.degree(v) != 3 for v in verts):
        raise MoveError(f"face {f} has a corner that is not trivalent")
    if any(G.color[verts[i]] == G.color[verts[(i + 1) % 4]] for i in range(4)):
        raise MoveError(f"face {f} does not alternate in color")
    return verts


def square_move_label(G: PlabicGraph, face: KSubset | int) -> KSubset:
    """Exchange rule: with neighbours ``Sab, Sbc, Scd, Sda`` round a face
    ``Sac`` the new label is ``Sbd``."""
    f = _face_index(G, face)
    square_corners(G, f)
    X = G.face_label(f).as_set()
    around = [G.face_label(G.face_of(G.reverse(d))).as_set() for d in G.faces[f]]
    common = frozenset.intersection(*around)
    union = frozenset.union(*around)
    return KSubset.of(common | (union - X), G.n)


def _square(G: PlabicGraph, face: KSubset | int) -> PlabicGraph:
    f = _face_index(G, face)
    color = dict(G.color)
    for v in square_corners(G, f):
        color[v] = BLACK if color[v] == WHITE else WHITE
    return G.copy(color=color)


def apply_move(G: PlabicGraph, move: Move) -> PlabicGraph:
    if isinstance(move, DeleteBivalent):
        return _delete_bivalent(G, move.vertex)
    if isinstance(move, ContractSameColor):
        return _contract(G, move.edge)
    if isinstance(move, ExpandVertex):
        return _expand(G, move.vertex, move.start, move.count)
    if isinstance(move, SquareMove):
        return _square(G, move.face)
    raise MoveError(f"unknown move {move!r}")


# -- trivalent resolution -------------------------------------------------------


def _label_key(S: KSubset) -> tuple[int, ...]:
    return S.elements


@dataclass(frozen=True)
class ResolutionSite:
    vertex: int
    color: str
    degree: int
    start: int
    fixed: bool
    corners: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "vertex": self.vertex, "color": self.color, "degree": self.degree,
            "start": self.start, "fixed": self.fixed, "corners": list(self.corners),
        }


@dataclass(frozen=True)
class EquivariantResolution:
    """Choose the caterpillar tree of a high-degree vertex from its corner labels.

    The corner sequence is compared up to the shift ``I -> I + t*ell``; the
    start corner is the one opening the least shifted sequence, so vertices in
    one rotation orbit are resolved alike.  A tie means the vertex is fixed by
    the rotation; ``twist`` then picks which of the tied corners is used, and
    ``twist=1`` gives the image of the ``twist=0`` choice under the rotation.
    """

    ell: int | None = None
    twist: int = 0

    def order(self, n: int) -> int:
        if self.ell is None:
            return 1
        return n // math.gcd(n, self.ell)

    def choose(self, corners: list[KSubset]) -> tuple[int, bool]:
        m = len(corners)
        n = corners[0].n
        d = self.order(n)
        shift = self.ell or 0
        best, tied = None, []
        for t in range(d):
            moved = [_label_key(L.shift(t * shift)) for L in corners]
            for j in range(m):
                seq = tuple(moved[(j + i) % m] for i in range(m))
                if best is None or seq < best:
                    best, tied = seq, [(t, j)]
                elif seq == best:
                    tied.append((t, j))
        t, j = min(tied, key=lambda tj: ((tj[0] + self.twist) % d, tj[1]))
        return j, len(tied) > 1


def resolve_trivalent(G: PlabicGraph, policy: EquivariantResolution | None = None,
                      colors: Iterable[str] = (WHITE, BLACK)) -> tuple[PlabicGraph, list[ResolutionSite]]:
    """Delete bivalent vertices, then split every vertex of degree > 3 (among
    ``colors``) into a left-combed caterpillar tree.

    A bivalent vertex between two marked points (only possible for n = 2) has
    no trivalent replacement and is kept."""
    policy = policy or EquivariantResolution()
    for v in G.internal:
        if G.degree(v) < 2:
            raise PlabicError(f"vertex {v} is a lollipop")
    for v in G.internal:
        if G.degree(v) == 2 and not all(G.is_boundary(G.other(e, v)) for e in G.rotation[v]):
            G = apply_move(G, DeleteBivalent(v))
    labels = G.face_labels()
    plan = []
    for v in G.internal:
        if G.degree(v) > 3 and G.color[v] in colors:
            corners = [labels[f] for f in G.corner_faces(v)]
            start, fixed = policy.choose(corners)
            plan.append(ResolutionSite(v, G.color[v], G.degree(v), start, fixed,
                                       tuple(c.compact() for c in corners)))
    for site in plan:
        start = site.start
        for _ in range(site.degree - 3):
            G = _expand(G, site.vertex, start, 2)
            start = 0
    return G, plan


def make_trivalent(G: PlabicGraph, policy: EquivariantResolution | None = None) -> PlabicGraph:
    return resolve_trivalent(G, policy)[0]


# -- symmetry ------------------------------------------------------------------------


class IsomorphismError(PlabicError):
    pass


@dataclass
class BoundaryIsomorphism:
    vertices: dict[int, int]
    edges: dict[int, int]
    faces: dict[int, int]


def boundary_isomorphism(G: PlabicGraph, H: PlabicGraph, shift: int = 0,
                         label_shift: int | None = None) -> BoundaryIsomorphism:
    """The unique orientation-preserving isomorphism sending marked point ``i``
    of ``G`` to marked point ``i + shift`` of ``H`` and keeping colors.

    With ``label_shift`` the face labels must also satisfy
    ``label(image) = label + label_shift``.  Raises ``IsomorphismError``
    naming the first mismatch.
    """
    if G.n != H.n:
        raise IsomorphismError(f"marked point counts differ: {G.n} vs {H.n}")
    n = G.n
    vmap: dict[int, int] = {}
    emap: dict[int, int] = {}
    queue: deque[int] = deque()

    def bind_edge(e: int, e2: int) -> None:
        if emap.setdefault(e, e2) != e2:
            raise IsomorphismError(f"edge {e} maps to both {emap[e]} and {e2}")

    def bind_vertex(v: int, v2: int) -> None:
        if v in vmap:
            if vmap[v] != v2:
                raise IsomorphismError(f"vertex {v} maps to both {vmap[v]} and {v2}")
            return
        if G.color.get(v) != H.color.get(v2):
            raise IsomorphismError(f"vertex {v} ({G.color.get(v)}) meets {v2} ({H.color.get(v2)})")
        if G.degree(v) != H.degree(v2):
            raise IsomorphismError(f"vertex {v} has degree {G.degree(v)}, its image {H.degree(v2)}")
        vmap[v] = v2
        queue.append(v)

    for i in range(1, n + 1):
        b, b2 = G.boundary[i - 1], H.boundary[mod1(i + shift, n) - 1]
        bind_vertex(b, b2)
        bind_edge(G.rotation[b][0], H.rotation[b2][0])
    while queue:
        v = queue.popleft()
        v2 = vmap[v]
        R, R2 = G.rotation[v], H.rotation[v2]
        anchor = next(j for j, e in enumerate(R) if e in emap)
        off = R2.index(emap[R[anchor]]) - anchor
        for j, e in enumerate(R):
            e2 = R2[(j + off) % len(R2)]
            bind_edge(e, e2)
            bind_vertex(G.other(e, v), H.other(e2, v2))
    if len(vmap) != len(G.rotation) or len(set(vmap.values())) != len(H.rotation):
        raise IsomorphismError(
            f"graphs are not isomorphic: matched {len(vmap)} of {len(G.rotation)} / {len(H.rotation)} vertices")
    if len(emap) != len(G.ends) or len(H.ends) != len(G.ends):
        raise IsomorphismError("edge counts differ")

    def image(dart: Dart) -> Dart:
        e, t = dart
        if e < 0:
            return -mod1(-e + shift, n), vmap[t]
        return emap[e], vmap[t]

    fmap = {f: H.face_of(image(darts[0])) for f, darts in enumerate(G.faces)}
    if label_shift is not None:
        Hl = H.face_labels()
        for f, lab in G.face_labels().items():
            want = lab.shift(label_shift)
            if Hl.get(fmap[f]) != want:
                raise IsomorphismError(f"face {lab} maps to a face labelled {Hl.get(fmap[f])}, expected {want}")
    return BoundaryIsomorphism(vmap, emap, fmap)


@dataclass
class SymmetryCertificate:
    level: str
    ell: int
    ok: bool
    label_map: dict[str, str]
    vertex_map: dict | None = None
    witness: str | None = None
    fixed_sites: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "level": self.level, "ell": self.ell, "ok": self.ok, "label_map": self.label_map,
            "vertex_map": self.vertex_map, "witness": self.witness, "fixed_sites": self.fixed_sites,
        }


def _tiling_certificate(T: PlabicTiling, ell: int) -> SymmetryCertificate:
    D = T.collection
    fail = lambda why: SymmetryCertificate("tiling", ell, False, {}, witness=why)  # noqa: E731
    label_map = {}
    for S in D:
        image = S.shift(ell)
        if image not in D:
            return fail(f"{S.compact()} -> {image.compact()} is not in the collection")
        label_map[S.compact()] = image.compact()
    faces = {(f.color, f.core): f for f in T.faces}
    for f in T.faces:
        core = frozenset(mod1(x + ell, T.n) for x in f.core)
        g = faces.get((f.color, core))
        moved = [S.shift(ell) for S in f.members]
        if g is None:
            return fail(f"face {f!r} has no image face")
        j = g.members.index(moved[0])
        if list(g.members[j:] + g.members[:j]) != moved:
            return fail(f"face {f!r} maps to {g!r} with reversed orientation")
    for i in range(1, T.n + 1):
        S, U = T.boundary_edge(i)
        if (S.shift(ell), U.shift(ell)) != T.boundary_edge(mod1(i + ell, T.n)):
            return fail(f"boundary edge {i} does not map to boundary edge {mod1(i + ell, T.n)}")
    return SymmetryCertificate("tiling", ell, True, label_map,
                               vertex_map={k: v for k, v in label_map.items()})


def _graph_certificate(G: PlabicGraph, ell: int) -> SymmetryCertificate:
    try:
        iso = boundary_isomorphism(G, G, shift=ell, label_shift=ell)
    except IsomorphismError as exc:
        return SymmetryCertificate("graph", ell, False, {}, witness=str(exc))
    labels = G.face_labels()
    label_map = {labels[f].compact(): labels[g].compact() for f, g in iso.faces.items() if f in labels}
    return SymmetryCertificate("graph", ell, True, label_map, vertex_map=dict(iso.vertices))


def rotational_symmetry_certificate(obj: PlabicTiling | PlabicGraph, ell: int) -> SymmetryCertificate:
    """Check that ``I -> I + ell`` relabelling is an automorphism sending
    marked point ``i`` to ``i + ell``."""
    if isinstance(obj, PlabicTiling):
        return _tiling_certificate(obj, ell)
    if isinstance(obj, PlabicGraph):
        return _graph_certificate(obj, ell)
    raise TypeError(f"cannot certify {type(obj).__name__}")
