import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import brute_ws_family, stage_counts, sweep
from symwsc.core import Collection, KSubset, Params, cyclic_intervals, is_maximal, is_rho_symmetric
from symwsc.generator import (
    InfeasibleError,
    build_B_s,
    build_L_s,
    default_order,
    fold_map_apply,
    fold_map_invert,
    generate,
    generate_divisible,
    ground_sets,
    index_window,
    informal_generate,
    interval_I,
    parse_order,
    predicted_sizes,
    successor,
    trace,
    validate_order,
)

P363 = Params(3, 6, 3)
GOLDEN = "123 234 345 456 156 126 125 245 124 145".split()


def S(text, n=6):
    return KSubset.parse(text, n)


def check_collection(D, k, n, ell):
    sets = [frozenset(S) for S in D]
    assert len(D) == k * (n - k) + 1
    assert brute_ws_family(sets)
    assert all(frozenset((x + ell - 1) % n + 1 for x in A) in set(sets) for A in sets)
    for i in range(1, n + 1):
        assert frozenset((i + j - 1) % n + 1 for j in range(k)) in set(sets)


class TestPieces:
    def test_successor(self):
        assert successor([1, 2, 4, 5], 2) == 4
        assert successor([1, 2, 4, 5], 5) == 1
        with pytest.raises(ValueError):
            successor([1, 2], 3)

    def test_orders(self):
        assert default_order(3) == (3, 2, 1)
        assert parse_order("3, 2,1") == (3, 2, 1)
        with pytest.raises(ValueError):
            validate_order(P363, (1, 1, 2))
        # folding needs the classes 1..g last
        with pytest.raises(ValueError):
            validate_order(Params(3, 6, 4), (1, 2, 3, 4))
        assert validate_order(Params(3, 6, 4), (3, 4, 2, 1)) == (3, 4, 2, 1)

    def test_ground_sets_first_stages(self):
        assert ground_sets(P363, (3, 2, 1), 1) == ([1, 2, 3, 4, 5, 6], [[1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]])
        assert ground_sets(P363, (3, 2, 1), 2) == ([1, 2, 4, 5], [[1, 2, 4], [1, 2, 4, 5]])

    def test_windows(self):
        assert index_window(P363, (3, 2, 1), 1) == [1, 2, 3]
        assert index_window(P363, (3, 2, 1), 2) == [1, 2]

    def test_intervals(self):
        assert interval_I(P363, (3, 2, 1), 1, 4, 1) == S("145")
        assert interval_I(P363, (3, 2, 1), 1, 6, 1) is None
        assert interval_I(P363, (3, 2, 1), 2, 4, 1) == S("124")

    def test_stage_sets(self):
        assert build_B_s(P363, (3, 2, 1), 1).compact() == ["123", "234", "345"]
        assert build_B_s(P363, (3, 2, 1), 2).compact() == ["124", "245"]
        assert build_L_s(P363, (3, 2, 1), 2).compact() == ["124", "125", "145", "245"]

    def test_predictions_match_worked_counts(self):
        assert predicted_sizes(P363, 1) == {"B": 3, "L": 6}
        assert predicted_sizes(P363, 2) == {"B": 2, "L": 4}
        assert predicted_sizes(P363, 3) == {"B": None, "L": 0}
        assert predicted_sizes(Params(2, 6, 3), 2) == {"B": 2, "L": 4}
        assert predicted_sizes(Params(2, 6, 3), 3) == {"B": None, "L": 1}


class TestGenerate:
    def test_golden(self):
        assert generate(3, 6, 3, (3, 2, 1)) == Collection.parse(GOLDEN, 6, 3)

    def test_infeasible(self):
        with pytest.raises(InfeasibleError):
            generate(2, 5, 1)
        with pytest.raises(InfeasibleError):
            trace(Params(2, 8, 2))

    def test_ell_equal_n_is_rejected(self):
        with pytest.raises(ValueError):
            generate(2, 6, 6)

    @pytest.mark.parametrize("k,n,ell", list(sweep(10)))
    def test_sweep_properties(self, k, n, ell):
        check_collection(generate(k, n, ell), k, n, ell)

    @pytest.mark.parametrize("k,n,ell", [(4, 6, 3), (5, 8, 4), (3, 4, 2), (6, 9, 3)])
    def test_k_above_half_via_complements(self, k, n, ell):
        check_collection(generate(k, n, ell), k, n, ell)

    @pytest.mark.parametrize("k,n,ell", list(sweep(9, divisible_only=True)))
    def test_stage_counts(self, k, n, ell):
        tr = trace(Params(k, n, ell))
        got = [(len(st.B), len(st.L)) for st in tr.stages]
        want = stage_counts(k, n, ell)
        assert len(got) == len(want)
        for (gb, gl), (wb, wl) in zip(got, want):
            assert gl == wl and (wb is None or gb == wb)

    @pytest.mark.parametrize("k,n,ell", list(sweep(9, divisible_only=True)))
    def test_stages_are_disjoint(self, k, n, ell):
        tr = trace(Params(k, n, ell))
        seen = set()
        for st in tr.stages:
            assert not seen & set(st.L)
            seen |= set(st.L)
        assert sum(len(st.L) for st in tr.stages) == k * (n - k) + 1

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(list(sweep(10, divisible_only=True))), st.randoms(use_true_random=False))
    def test_any_order_works(self, case, rnd):
        k, n, ell = case
        order = list(range(1, ell + 1))
        rnd.shuffle(order)
        D = generate(k, n, ell, order)
        assert is_maximal(D) and is_rho_symmetric(D, ell)[0]


class TestFolding:
    P = Params(3, 6, 4)

    def test_fold_map_values(self):
        # F(a + 2x) = a + 4x with a in {1, 2}
        assert fold_map_apply(S("123"), self.P) == KSubset.of([1, 2, 5], 12)
        assert fold_map_apply(S("456"), self.P) == KSubset.of([6, 9, 10], 12)

    @pytest.mark.parametrize("text", ["123", "135", "246", "156", "345"])
    def test_round_trip(self, text):
        assert fold_map_invert(fold_map_apply(S(text), self.P), self.P) == S(text)

    def test_invert_rejects_outside_image(self):
        with pytest.raises(ValueError):
            fold_map_invert(KSubset.of([1, 2, 3], 12), self.P)

    def test_folding_run(self):
        tr = trace(self.P)
        assert (tr.params.n, tr.params.ell) == (12, 4)
        D = generate(3, 6, 4)
        assert len(D) == 10
        check_collection(D, 3, 6, 4)
        kept = tr.union(skip=2)
        assert {fold_map_invert(J, self.P) for J in kept} == set(D)


class TestInformal:
    @pytest.mark.parametrize("k,n,ell", list(sweep(9, divisible_only=True)))
    def test_matches_formal(self, k, n, ell):
        p = Params(k, n, ell)
        assert informal_generate(p) == generate_divisible(p)

    def test_intervals_always_present(self):
        D = generate(2, 8, 4)
        assert set(cyclic_intervals(2, 8)) <= set(D)
