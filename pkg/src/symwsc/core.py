"""Ground-set arithmetic, k-subsets, orbits and the basic predicates.

Everything is 1-based: the ground set is ``{1, ..., n}`` and a residue of
zero is written as ``n``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator


def mod1(x: int, n: int) -> int:
    """Reduce ``x`` into ``1..n``."""
    return (x - 1) % n + 1


@dataclass(frozen=True, order=True)
class KSubset:
    elements: tuple[int, ...]
    n: int = field(compare=False)

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError(f"elements must be strictly increasing: {els}")
        if els and (els[0] < 1 or els[-1] > self.n):
            raise ValueError(f"elements must lie in 1..{self.n}: {els}")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "KSubset":
        return cls(tuple(sorted(set(elements))), n)

    @classmethod
    def parse(cls, text: str, n: int) -> "KSubset":
        """Accept ``{1,2,6}``, ``1,2,6`` or the compact digit string ``126``."""
        s = text.strip()
        if s.startswith("{") and s.endswith("}"):
            s = s[1:-1]
        if "," in s or " " in s.strip():
            parts = [p for p in re.split(r"[,\s]+", s) if p]
            els = [int(p) for p in parts]
        elif s == "":
            els = []
        elif n <= 9:
            els = [int(ch) for ch in s]
        else:
            els = [int(s)]
        if len(set(els)) != len(els):
            raise ValueError(f"repeated element in {text!r}")
        return cls.of(els, n)

    @property
    def k(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def shift(self, t: int) -> "KSubset":
        return cyclic_shift_subset(self, t)

    def text(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def compact(self) -> str:
        if self.n > 9:
            return self.text()
        return "".join(map(str, self.elements))

    def __str__(self) -> str:
        return self.compact()

    def __repr__(self) -> str:
        return f"KSubset({self.compact()}, n={self.n})"


def cyclic_shift_subset(I: KSubset, t: int) -> KSubset:
    n = I.n
    return KSubset(tuple(sorted(mod1(x + t, n) for x in I.elements)), n)


def interval(i: int, k: int, n: int) -> KSubset:
    """The cyclic interval ``{i, i+1, ..., i+k-1}``."""
    return KSubset.of((mod1(i + j, n) for j in range(k)), n)


def cyclic_intervals(k: int, n: int) -> list[KSubset]:
    return [interval(i, k, n) for i in range(1, n + 1)]


def all_subsets(k: int, n: int) -> list[KSubset]:
    return [KSubset(c, n) for c in combinations(range(1, n + 1), k)]


class Collection:
    """A deduplicated, canonically ordered set of k-subsets of ``[n]``."""

    __slots__ = ("members", "n", "k", "_index")

    def __init__(self, members: Iterable[KSubset], n: int, k: int):
        ms = set()
        for m in members:
            if m.n != n or m.k != k:
                raise ValueError(f"{m!r} is not a {k}-subset of [{n}]")
            ms.add(m)
        self.members: tuple[KSubset, ...] = tuple(sorted(ms))
        self.n = n
        self.k = k
        self._index = frozenset(self.members)

    @classmethod
    def parse(cls, items: Iterable[str], n: int, k: int) -> "Collection":
        return cls((KSubset.parse(s, n) for s in items), n, k)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[KSubset]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Collection):
            return NotImplemented
        return (self.n, self.k, self.members) == (other.n, other.k, other.members)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.members))

    def __or__(self, other: "Collection") -> "Collection":
        return Collection(self.members + other.members, self.n, self.k)

    def __sub__(self, other: "Collection") -> "Collection":
        return Collection((m for m in self.members if m not in other), self.n, self.k)

    def as_frozenset(self) -> frozenset[KSubset]:
        return self._index

    def compact(self) -> list[str]:
        return [m.compact() for m in self.members]

    def __repr__(self) -> str:
        return f"Collection(n={self.n}, k={self.k}, [{' '.join(self.compact())}])"


@dataclass(frozen=True)
class Params:
    """Ambient parameters ``(k, n, ell)`` with derived ``g``, ``d`` and, when
    the congruence holds, ``k = d*r + c`` with ``c`` in ``{-1, 0, 1}``."""

    k: int
    n: int
    ell: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"k must satisfy 1 <= k <= n-1, got k={self.k}, n={self.n}")
        if not 1 <= self.ell <= self.n - 1:
            raise ValueError(f"ell must satisfy 1 <= ell <= n-1, got ell={self.ell}, n={self.n}")

    @property
    def g(self) -> int:
        return gcd(self.n, self.ell)

    @property
    def d(self) -> int:
        return self.n // self.g

    @property
    def decomposition(self) -> tuple[int, int] | None:
        """``(r, c)`` or ``None`` when ``k mod d`` is not in ``{0, 1, d-1}``.

        For ``d = 2`` an odd ``k`` is written with ``c = 1``.
        """
        d, k = self.d, self.k
        m = k % d
        if m == 0:
            return k // d, 0
        if m == 1:
            return (k - 1) // d, 1
        if m == d - 1:
            return (k + 1) // d, -1
        return None

    @property
    def r(self) -> int | None:
        dec = self.decomposition
        return None if dec is None else dec[0]

    @property
    def c(self) -> int | None:
        dec = self.decomposition
        return None if dec is None else dec[1]

    @property
    def feasible(self) -> bool:
        return self.decomposition is not None

    @property
    def divisible(self) -> bool:
        return self.n == self.d * self.ell


@dataclass(frozen=True)
class Feasibility:
    k: int
    n: int
    ell: int
    d: int
    g: int
    r: int | None
    c: int | None
    feasible: bool

    def as_dict(self) -> dict:
        return {
            "k": self.k, "n": self.n, "ell": self.ell, "d": self.d, "g": self.g,
            "r": self.r, "c": self.c, "feasible": self.feasible,
        }


def feasibility(k: int, n: int, ell: int) -> Feasibility:
    p = Params(k, n, ell)
    return Feasibility(k, n, ell, p.d, p.g, p.r, p.c, p.feasible)


def rho_orbit(I: KSubset, ell: int) -> Collection:
    seen = [I]
    J = cyclic_shift_subset(I, ell)
    while J != I:
        seen.append(J)
        J = cyclic_shift_subset(J, ell)
    return Collection(seen, I.n, I.k)


def is_weakly_separated(S: KSubset, T: KSubset) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Return ``(True, None)`` or ``(False, (a, b, c, d))`` with ``a < b < c < d``
    alternating between ``S - T`` and ``T - S``."""
    if S.n != T.n or S.k != T.k:
        raise ValueError(f"cannot compare {S!r} with {T!r}: ambient parameters differ")
    s, t = S.as_set(), T.as_set()
    diff = sorted((x, x in s) for x in s ^ t)
    # first element of each maximal run of equal membership
    runs = [x for i, (x, side) in enumerate(diff) if i == 0 or diff[i - 1][1] != side]
    if len(runs) >= 4:
        return False, tuple(runs[:4])
    return True, None


def weakly_separated(S: KSubset, T: KSubset) -> bool:
    return is_weakly_separated(S, T)[0]


def is_ws_collection(D: Collection) -> tuple[bool, list[tuple[KSubset, KSubset]]]:
    bad = [(S, T) for S, T in combinations(D.members, 2) if not weakly_separated(S, T)]
    return not bad, bad


def is_rho_symmetric(D: Collection, ell: int) -> tuple[bool, list[KSubset]]:
    bad = [I for I in D if cyclic_shift_subset(I, ell) not in D]
    return not bad, bad


def max_size(k: int, n: int) -> int:
    return k * (n - k) + 1


def is_maximal(D: Collection) -> bool:
    """Cardinality test ``|D| = k(n-k)+1`` on a weakly separated ``D``.

    Raises ``ValueError`` when ``D`` is not weakly separated.
    """
    ok, bad = is_ws_collection(D)
    if not ok:
        raise ValueError(f"collection is not weakly separated, e.g. {bad[0]}")
    full = len(D) == max_size(D.k, D.n)
    if full:
        missing = [I for I in cyclic_intervals(D.k, D.n) if I not in D]
        assert not missing, f"maximal collection misses intervals {missing}"
    return full


def complement_collection(D: Collection) -> Collection:
    full = set(range(1, D.n + 1))
    return Collection((KSubset.of(full - m.as_set(), D.n) for m in D), D.n, D.n - D.k)
