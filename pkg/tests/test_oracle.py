import pytest

from cases import brute_ws_family, feasible, triangulation_collections, triangulations
from symwsc.core import is_maximal, is_rho_symmetric
from symwsc.oracle import FULL_BUDGET, SYMMETRIC_BUDGET, OracleBudgetError, oracle_enumerate


def as_pairs(D):
    return frozenset(tuple(S.elements) for S in D)


@pytest.mark.parametrize("m,count", [(3, 1), (4, 2), (5, 5), (6, 14), (7, 42), (8, 132)])
def test_triangulation_enumerator_gives_catalan(m, count):
    ts = triangulations(m)
    assert len(ts) == len(set(ts)) == count
    assert all(len(t) == m - 3 for t in ts)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_k2_collections_are_triangulations(n):
    got = {as_pairs(D) for D in oracle_enumerate(2, n)}
    assert got == triangulation_collections(n)


@pytest.mark.parametrize("k,n,count", [(1, 5, 1), (2, 6, 14), (3, 6, 34)])
def test_small_counts(k, n, count):
    # 34 is the number of maximal weakly separated collections in Gr(3,6)
    found = oracle_enumerate(k, n)
    assert len(found) == count
    for D in found:
        assert is_maximal(D)
        assert brute_ws_family([frozenset(S) for S in D])


def test_symmetric_mode_filters():
    everything = oracle_enumerate(3, 6)
    sym = oracle_enumerate(3, 6, ell=3)
    assert {tuple(D) for D in sym} == {tuple(D) for D in everything if is_rho_symmetric(D, 3)[0]}
    assert len(sym) == 6


@pytest.mark.parametrize("k,n,ell", [(2, 5, 1), (2, 8, 2), (3, 7, 1)])
def test_infeasible_has_no_symmetric_collection(k, n, ell):
    assert not feasible(k, n, ell)
    assert oracle_enumerate(k, n, ell) == []


def test_budget_guard():
    assert FULL_BUDGET < SYMMETRIC_BUDGET
    with pytest.raises(OracleBudgetError):
        oracle_enumerate(4, 9)
    with pytest.raises(OracleBudgetError):
        oracle_enumerate(3, 6, budget=8)
