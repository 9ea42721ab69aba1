"""Constructive generator for rho^ell-symmetric maximal weakly separated
collections.

The divisible case ``n = d*ell`` strips the element orbits of ``a -> a + ell``
one at a time in a chosen order; at stage ``s`` the k-element cyclic
intervals of the truncated ground sets ``P_{s,h}`` are the orbit
representatives ``B_s`` and their rotations form ``L_s``.  When ``ell`` does
not divide ``n`` the collection is built on ``[d*ell]`` and folded back onto
``[n]`` through an increasing injection.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    Collection,
    KSubset,
    Params,
    complement_collection,
    mod1,
    rho_orbit,
)


class InfeasibleError(ValueError):
    """Raised when ``k mod d`` is not one of ``0, 1, d-1``."""


REJECT = None


def successor(P: Sequence[int], x: int) -> int:
    """Next element of the sorted sequence ``P`` after ``x``, wrapping around."""
    if x not in P:
        raise ValueError(f"{x} is not in {list(P)}")
    j = bisect_right(P, x)
    return P[j % len(P)]


def default_order(ell: int) -> tuple[int, ...]:
    return tuple(range(ell, 0, -1))


def parse_order(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x)


def validate_order(params: Params, order: Sequence[int] | None) -> tuple[int, ...]:
    ell, g = params.ell, params.g
    if order is None:
        return default_order(ell)
    order = tuple(order)
    if sorted(order) != list(range(1, ell + 1)):
        raise ValueError(f"order {order} is not a permutation of 1..{ell}")
    if not params.divisible and set(order[ell - g:]) != set(range(1, g + 1)):
        raise ValueError(
            f"order {order}: with ell={ell} not dividing n={params.n} the last "
            f"g={g} entries must be the classes 1..{g}"
        )
    return order


def _require_feasible(params: Params) -> None:
    if not params.feasible:
        raise InfeasibleError(
            f"no rho^{params.ell}-symmetric maximal collection for k={params.k}, "
            f"n={params.n}: k mod d = {params.k % params.d} with d={params.d}"
        )


def _require_divisible(params: Params) -> None:
    if not params.divisible:
        raise ValueError(f"ell={params.ell} does not divide n={params.n}")


def stage_count(params: Params) -> int:
    """Number of stages ``ell - r + 1``."""
    return params.ell - params.r + 1


def element_orbit(a: int, params: Params) -> list[int]:
    return [mod1(a + i * params.ell, params.n) for i in range(params.d)]


def ground_sets(params: Params, order: Sequence[int], s: int) -> tuple[list[int], list[list[int]]]:
    """``P_s`` and the truncations ``[P_{s,1}, ..., P_{s,d}]``."""
    _require_divisible(params)
    if not 1 <= s <= params.ell + 1:
        raise ValueError(f"stage {s} out of range 1..{params.ell + 1}")
    n, d, ell = params.n, params.d, params.ell
    removed = set()
    for a in order[: s - 1]:
        removed.update(element_orbit(a, params))
    P = [x for x in range(1, n + 1) if x not in removed]
    if s > ell:
        return P, [list(P) for _ in range(d)]
    a_s = order[s - 1]
    truncs = []
    for h in range(1, d + 1):
        drop = {mod1(a_s + j * ell, n) for j in range(h, d)}
        truncs.append([x for x in P if x not in drop])
    return P, truncs


def index_window(params: Params, order: Sequence[int], s: int) -> list[int]:
    """Elements of ``P_s`` from ``S(a_s - ell)`` round to ``a_s`` in cyclic order."""
    P, _ = ground_sets(params, order, s)
    if s > params.ell or not P:
        return []
    a_s = order[s - 1]
    x = successor(P, mod1(a_s - params.ell, params.n))
    window = [x]
    while x != a_s:
        x = successor(P, x)
        window.append(x)
    return window


def interval_I(params: Params, order: Sequence[int], s: int, i: int, h: int) -> KSubset | None:
    _, truncs = ground_sets(params, order, s)
    P = truncs[h - 1]
    return _interval_in(P, i, params.k, params.n)


def _interval_in(P: Sequence[int], i: int, k: int, n: int) -> KSubset | None:
    if i not in P or len(P) < k:
        return REJECT
    out = [i]
    x = i
    for _ in range(k - 1):
        x = successor(P, x)
        out.append(x)
    return KSubset(tuple(sorted(out)), n)


def build_B_s(params: Params, order: Sequence[int], s: int) -> Collection:
    """Accepted intervals ``I(i, h)`` over the window and ``h in 1..d``.

    An interval is kept only if it meets the class of ``a_s``; for short
    intervals (``k < ell - s + 1``) the others repeat orbits already produced
    at later stages and would break the per-stage counts.
    """
    _, truncs = ground_sets(params, order, s)
    window = index_window(params, order, s)
    if not window:
        return Collection((), params.n, params.k)
    orbit = set(element_orbit(order[s - 1], params))
    found = []
    for i in window:
        for P in truncs:
            I = _interval_in(P, i, params.k, params.n)
            if I is not REJECT and orbit & I.as_set():
                found.append(I)
    return Collection(found, params.n, params.k)


def build_L_s(params: Params, order: Sequence[int], s: int) -> Collection:
    B = build_B_s(params, order, s)
    return _orbits(B, params)


def _orbits(B: Collection, params: Params) -> Collection:
    members = []
    for I in B:
        members.extend(rho_orbit(I, params.ell))
    return Collection(members, params.n, params.k)


def predicted_sizes(params: Params, s: int) -> dict[str, int | None]:
    """Stage sizes ``|B_s|`` and ``|L_s|`` from the closed-form counting formulas."""
    _require_feasible(params)
    _require_divisible(params)
    k, d, r, c, ell = params.k, params.d, params.r, params.c, params.ell
    if not 1 <= s <= ell - r + 1:
        raise ValueError(f"stage {s} out of range 1..{ell - r + 1}")
    if s < ell - r:
        B = k
    elif s == ell - r:
        B = k - r if c == 1 else k
    else:
        L = {-1: k + 1, 0: 1, 1: 0}[c]
        return {"B": None, "L": L}
    return {"B": B, "L": d * B}


@dataclass
class StageTrace:
    s: int
    a_s: int | None
    P: list[int]
    P_h: list[list[int]]
    window: list[int]
    B: Collection
    L: Collection
    predicted: dict[str, int] | None = None

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "a_s": self.a_s,
            "P_s": self.P,
            "P_sh": self.P_h,
            "window": self.window,
            "B_s": self.B.compact(),
            "L_s": self.L.compact(),
            "predicted": self.predicted,
        }


@dataclass
class GeneratorTrace:
    params: Params
    order: tuple[int, ...]
    stages: list[StageTrace] = field(default_factory=list)

    def union(self, skip: int = 0) -> Collection:
        p = self.params
        members = []
        for st in self.stages[skip:]:
            members.extend(st.L)
        return Collection(members, p.n, p.k)


def trace_divisible(params: Params, order: Sequence[int] | None = None) -> GeneratorTrace:
    _require_feasible(params)
    _require_divisible(params)
    order = validate_order(params, order)
    trace = GeneratorTrace(params, order)
    for s in range(1, stage_count(params) + 1):
        P, truncs = ground_sets(params, order, s)
        window = index_window(params, order, s)
        B = build_B_s(params, order, s)
        L = _orbits(B, params)
        try:
            pred = predicted_sizes(params, s)
        except ValueError:
            pred = None
        a_s = order[s - 1] if s <= params.ell else None
        trace.stages.append(StageTrace(s, a_s, P, truncs, window, B, L, pred))
    return trace


def generate_divisible(params: Params, order: Sequence[int] | None = None) -> Collection:
    return trace_divisible(params, order).union()


def fold_map_apply(I: KSubset, params: Params) -> KSubset:
    """``F(a + g*x) = a + ell*x`` for ``1 <= a <= g``, applied elementwise."""
    g, ell, d = params.g, params.ell, params.d
    return KSubset.of((_fold(y, g, ell) for y in I), d * ell)


def _fold(y: int, g: int, ell: int) -> int:
    a = mod1(y, g)
    x = (y - a) // g
    return a + ell * x


def fold_map_invert(J: KSubset, params: Params) -> KSubset:
    g, ell = params.g, params.ell
    out = []
    for z in J:
        a = mod1(z, ell)
        if a > g:
            raise ValueError(f"{z} is not in the image of the folding map (class {a} > g={g})")
        x = (z - a) // ell
        out.append(a + g * x)
    return KSubset.of(out, params.n)


def folded_params(params: Params) -> Params:
    return Params(params.k, params.d * params.ell, params.ell)


def trace(params: Params, order: Sequence[int] | None = None) -> GeneratorTrace:
    """Stage trace of the divisible run (on ``[d*ell]`` in the folding case)."""
    _require_feasible(params)
    order = validate_order(params, order)
    if params.divisible:
        return trace_divisible(params, order)
    return trace_divisible(folded_params(params), order)


def generate(k: int, n: int, ell: int, order: Sequence[int] | None = None) -> Collection:
    params = Params(k, n, ell)
    _require_feasible(params)
    order = validate_order(params, order)
    if 2 * k > n:
        # complements of a symmetric maximal collection are symmetric and maximal
        return complement_collection(generate(n - k, n, ell, order))
    if params.divisible:
        return generate_divisible(params, order)
    tr = trace_divisible(folded_params(params), order)
    reduced = tr.union(skip=params.ell - params.g)
    return Collection((fold_map_invert(J, params) for J in reduced), n, k)


# -- the left-removal / right-append walk ------------------------------------


def _informal_walk(start: list[int], P: list[int], orbit: set[int], a_s: int, k: int, n: int) -> list[KSubset]:
    """Walk from one starting interval; ``start`` is listed left to right.

    Appended elements are searched forward from ``a_s`` (from the right end
    while ``a_s`` is not yet in the window).
    """
    cur = list(start)
    found = [KSubset.of(cur, n)]
    seen = {tuple(cur)}

    def next_free(avoid: set[int], end: int) -> int | None:
        x = a_s if a_s in cur else end
        for _ in range(len(P)):
            x = successor(P, x)
            if x not in avoid:
                return x
        return None

    def emit() -> bool:
        key = tuple(cur)
        if key in seen:
            return False
        seen.add(key)
        found.append(KSubset.of(cur, n))
        return True

    while True:
        # drop class members right of a_s, rightmost first
        while a_s in cur:
            pos = cur.index(a_s)
            right = [j for j in range(pos + 1, len(cur)) if cur[j] in orbit]
            if not right:
                break
            del cur[right[-1]]
            x = next_free(set(cur) | orbit, cur[-1])
            if x is None:
                return found
            cur.append(x)
            if not emit():
                return found
        if cur[0] == a_s:
            return found
        end = cur[-1]
        removed = cur.pop(0)
        x = next_free(set(cur) | orbit if removed in orbit else set(cur), end)
        if x is None:
            return found
        cur.append(x)
        if not emit():
            return found


def informal_B_s(params: Params, order: Sequence[int], s: int) -> list[KSubset]:
    """Sets emitted by the walk at stage ``s`` (with repeats)."""
    P, _ = ground_sets(params, order, s)
    k, n, ell = params.k, params.n, params.ell
    if s > ell or len(P) < k:
        return []
    a_s = order[s - 1]
    orbit = set(element_orbit(a_s, params))
    # starting points S^{-(ell-1)}(a_s), ..., a_s
    pos = P.index(a_s)
    starts = [P[(pos - j) % len(P)] for j in range(ell - 1, -1, -1)]
    # the interval of size k ending in a_s
    first = [P[(pos - j) % len(P)] for j in range(k - 1, -1, -1)]
    out = _informal_walk(first, P, orbit, a_s, k, n)
    for i in starts:
        j0 = P.index(i)
        run = [P[(j0 + j) % len(P)] for j in range(k)]
        out.extend(_informal_walk(run, P, orbit, a_s, k, n))
    return out


def informal_generate(params: Params, order: Sequence[int] | None = None) -> Collection:
    _require_feasible(params)
    _require_divisible(params)
    order = validate_order(params, order)
    members = []
    for s in range(1, stage_count(params) + 1):
        for I in informal_B_s(params, order, s):
            members.extend(rho_orbit(I, params.ell))
    return Collection(members, params.n, params.k)
