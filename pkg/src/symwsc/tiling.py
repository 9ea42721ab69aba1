"""Cliques and the plabic tiling of a maximal weakly separated collection.

All incidence is derived from labels.  The face of a clique is traversed
counterclockwise in increasing order of the distinguishing element, which is
the order of the points ``V_S`` when ``v_1, ..., v_n`` go counterclockwise
round the regular n-gon.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

from .core import Collection, KSubset, cyclic_intervals, is_ws_collection, max_size

WHITE = "white"
BLACK = "black"


class TilingError(ValueError):
    pass


@dataclass(frozen=True)
class Clique:
    color: str
    core: frozenset[int]
    members: tuple[KSubset, ...]

    @property
    def nontrivial(self) -> bool:
        return len(self.members) >= 3

    def core_subset(self, n: int) -> KSubset:
        return KSubset.of(self.core, n)

    def boundary(self) -> list[tuple[KSubset, KSubset]]:
        m = self.members
        return [(m[i], m[(i + 1) % len(m)]) for i in range(len(m))]

    def label(self) -> str:
        return "".join(map(str, sorted(self.core))) if max(self.core, default=0) <= 9 else str(sorted(self.core))

    def __repr__(self) -> str:
        tag = "W" if self.color == WHITE else "B"
        return f"{tag}({self.label()}: {' '.join(map(str, self.members))})"


def _distinguishing(color: str, core: frozenset[int], S: KSubset) -> int:
    diff = S.as_set() ^ core
    (x,) = diff
    return x


def cliques(D: Collection) -> list[Clique]:
    """All white and black cliques with at least two members.

    Members are ordered by the distinguishing element, so consecutive members
    (cyclically) give the clique boundary.
    """
    white: dict[frozenset[int], list[KSubset]] = defaultdict(list)
    black: dict[frozenset[int], list[KSubset]] = defaultdict(list)
    members = D.members
    for i, S in enumerate(members):
        s = S.as_set()
        for T in members[i + 1:]:
            t = T.as_set()
            if len(s & t) == D.k - 1:
                white[s & t].extend((S, T))
                black[s | t].extend((S, T))
    out = []
    for color, table in ((WHITE, white), (BLACK, black)):
        for core, ms in table.items():
            uniq = sorted(set(ms), key=lambda S, c=core, col=color: _distinguishing(col, c, S))
            out.append(Clique(color, core, tuple(uniq)))
    out.sort(key=lambda c: (c.color != WHITE, len(c.core), sorted(c.core)))
    return out


def nontrivial_cliques(D: Collection) -> list[Clique]:
    return [c for c in cliques(D) if c.nontrivial]


def polygon_vertex(i: int, n: int) -> tuple[float, float]:
    t = 2 * math.pi * (i - 1) / n + math.pi / 2
    return math.cos(t), math.sin(t)


def position(S: KSubset) -> tuple[float, float]:
    """``V_S``: sum of the n-gon vertices indexed by ``S`` (rendering only)."""
    xs = [polygon_vertex(i, S.n) for i in S]
    return sum(x for x, _ in xs), sum(y for _, y in xs)


Dart = tuple[KSubset, KSubset]


@dataclass
class PlabicTiling:
    collection: Collection
    faces: list[Clique]
    edges: list[tuple[KSubset, KSubset]]
    face_of_dart: dict[Dart, int] = field(repr=False)
    boundary: list[KSubset] = field(repr=False)

    @property
    def n(self) -> int:
        return self.collection.n

    @property
    def k(self) -> int:
        return self.collection.k

    @property
    def vertices(self) -> tuple[KSubset, ...]:
        return self.collection.members

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def boundary_edge(self, i: int) -> tuple[KSubset, KSubset]:
        """Boundary edge ``(I_i, I_{i+1})`` crossed by marked point ``i``."""
        return self.boundary[i - 1], self.boundary[i % self.n]

    def edge_faces(self, S: KSubset, T: KSubset) -> tuple[int | None, int | None]:
        """Faces left of ``S -> T`` and left of ``T -> S`` (``None`` outside)."""
        return self.face_of_dart.get((S, T)), self.face_of_dart.get((T, S))


def build_tiling(D: Collection) -> PlabicTiling:
    ok, bad = is_ws_collection(D)
    if not ok:
        raise TilingError(f"collection is not weakly separated: {bad[0]}")
    if len(D) != max_size(D.k, D.n):
        raise TilingError(f"collection has {len(D)} members, a maximal one has {max_size(D.k, D.n)}")
    intervals = cyclic_intervals(D.k, D.n)
    if D.n == 2:
        # a segment: two vertices, one edge, no faces
        return PlabicTiling(D, [], [tuple(intervals)], {}, intervals)
    faces = nontrivial_cliques(D)
    face_of_dart: dict[Dart, int] = {}
    for idx, f in enumerate(faces):
        for S, T in f.boundary():
            if (S, T) in face_of_dart:
                raise TilingError(f"edge {S}->{T} lies on two faces with the same orientation")
            face_of_dart[(S, T)] = idx
    edges = sorted({tuple(sorted(d)) for d in face_of_dart})
    for S, T in edges:
        left, right = face_of_dart.get((S, T)), face_of_dart.get((T, S))
        colors = {faces[i].color for i in (left, right) if i is not None}
        if left is not None and right is not None and len(colors) != 2:
            raise TilingError(f"edge {S}-{T} separates two faces of the same color")
    unpaired = {d for d in face_of_dart if (d[1], d[0]) not in face_of_dart}
    expected = {(intervals[i], intervals[(i + 1) % D.n]) for i in range(D.n)}
    if unpaired != expected:
        raise TilingError("outer boundary of the tiling is not the cycle of cyclic intervals")
    T = PlabicTiling(D, faces, edges, face_of_dart, intervals)
    if T.euler_characteristic() != 1:
        raise TilingError(f"Euler characteristic {T.euler_characteristic()} != 1")
    return T
