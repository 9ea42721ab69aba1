"""Exhaustive search for maximal weakly separated collections.

Independent of the constructive generator: it only uses the pairwise
predicate, the forced cyclic intervals and the purity of maximal collections
(every maximal one has ``k(n-k)+1`` members).
"""

from __future__ import annotations

from .core import (
    Collection,
    KSubset,
    all_subsets,
    cyclic_intervals,
    cyclic_shift_subset,
    max_size,
    weakly_separated,
)

FULL_BUDGET = 16
SYMMETRIC_BUDGET = 25


class OracleBudgetError(ValueError):
    pass


def _units(k: int, n: int, ell: int | None) -> list[tuple[KSubset, ...]]:
    """Search units in lexicographic order of their least member.

    Plain mode: single subsets. Symmetric mode: whole rho^ell orbits, dropping
    orbits that are not internally weakly separated.
    """
    subsets = all_subsets(k, n)
    if ell is None:
        return [(S,) for S in subsets]
    units, seen = [], set()
    for S in subsets:
        if S in seen:
            continue
        orbit = [S]
        T = cyclic_shift_subset(S, ell)
        while T != S:
            orbit.append(T)
            T = cyclic_shift_subset(T, ell)
        seen.update(orbit)
        if all(weakly_separated(a, b) for i, a in enumerate(orbit) for b in orbit[i + 1:]):
            units.append(tuple(sorted(orbit)))
    return units


def oracle_enumerate(k: int, n: int, ell: int | None = None, budget: int | None = None) -> list[Collection]:
    """All maximal weakly separated collections in ``k``-subsets of ``[n]``,
    restricted to rho^ell-symmetric ones when ``ell`` is given."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    limit = budget if budget is not None else (FULL_BUDGET if ell is None else SYMMETRIC_BUDGET)
    if k * (n - k) > limit:
        raise OracleBudgetError(f"k(n-k) = {k * (n - k)} exceeds the oracle budget {limit}")

    units = _units(k, n, ell)
    weight = [len(u) for u in units]
    m = len(units)
    compat = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if all(weakly_separated(a, b) for a in units[i] for b in units[j]):
                compat[i] |= 1 << j
                compat[j] |= 1 << i

    target = max_size(k, n)
    forced = set(cyclic_intervals(k, n))
    chosen, size, cand = 0, 0, (1 << m) - 1
    for i, u in enumerate(units):
        if forced & set(u):
            chosen |= 1 << i
            size += weight[i]
            cand &= compat[i]
    cand &= ~chosen
    if any(not any(I in u for u in units) for I in forced):
        return []  # an interval orbit is not internally separated

    results: list[Collection] = []

    def capacity(mask: int) -> int:
        total = 0
        while mask:
            low = mask & -mask
            total += weight[low.bit_length() - 1]
            mask ^= low
        return total

    def search(chosen: int, size: int, cand: int) -> None:
        if size == target:
            members = [S for i in range(m) if chosen >> i & 1 for S in units[i]]
            results.append(Collection(members, n, k))
            return
        if size > target or size + capacity(cand) < target:
            return
        low = cand & -cand
        i = low.bit_length() - 1
        search(chosen | low, size + weight[i], cand & compat[i] & ~low)
        search(chosen, size, cand & ~low)

    search(chosen, size, cand)
    results.sort(key=lambda D: D.members)
    return results
