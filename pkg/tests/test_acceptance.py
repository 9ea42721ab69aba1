"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL
line (run with ``pytest -s tests/test_acceptance.py`` to see them)."""

import time
from math import comb

from cases import brute_ws_family, feasible, stage_counts, sweep, triangulation_collections
from symwsc.cli import main
from symwsc.core import Collection, Params, interval, is_rho_symmetric, max_size
from symwsc.generator import (
    fold_map_apply,
    fold_map_invert,
    generate,
    generate_divisible,
    informal_generate,
    trace,
)
from symwsc.oracle import oracle_enumerate
from symwsc.plabic import dual_plabic_graph
from symwsc.tiling import BLACK, WHITE, build_tiling, cliques, nontrivial_cliques
from symwsc.weave import BraidWord, symmetric_weave_pipeline, validate_ngraph


def verdict(number: int, title: str, ok: bool, detail: str = "") -> None:
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def standard_checks(D: Collection, k: int, n: int, ell: int) -> list[str]:
    sets = [frozenset(S) for S in D]
    members = set(sets)
    problems = []
    if len(D) != k * (n - k) + 1:
        problems.append(f"size {len(D)} != {k * (n - k) + 1}")
    if not brute_ws_family(sets):
        problems.append("not pairwise weakly separated")
    if any(frozenset((x + ell - 1) % n + 1 for x in A) not in members for A in sets):
        problems.append(f"not closed under +{ell}")
    for i in range(1, n + 1):
        if frozenset((i + j - 1) % n + 1 for j in range(k)) not in members:
            problems.append(f"missing interval starting at {i}")
    return problems


def test_criterion_1_golden_reproduction(capsys):
    start = time.perf_counter()
    code = main(["generate", "-k", "3", "-n", "6", "-l", "3", "--order", "3,2,1", "--format", "text"])
    elapsed = time.perf_counter() - start
    got = set(capsys.readouterr().out.split())
    want = set("123 234 345 456 156 126 125 245 124 145".split())
    with capsys.disabled():
        verdict(1, "golden (3,6,3) collection", code == 0 and got == want and elapsed < 1.0,
                f"{elapsed:.3f}s, {len(got)} members")


def test_criterion_2_size_law_sweep(capsys):
    start = time.perf_counter()
    failures = []
    cases = list(sweep(12))
    for k, n, ell in cases:
        failures += [f"{(k, n, ell)}: {p}" for p in standard_checks(generate(k, n, ell), k, n, ell)]
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        verdict(2, f"size law and closure over {len(cases)} feasible cases, n <= 12",
                not failures and elapsed < 60, f"{elapsed:.1f}s; " + "; ".join(failures[:3]))


def test_criterion_3_stagewise_counts(capsys):
    failures = []
    cases = list(sweep(12, divisible_only=True))
    for k, n, ell in cases:
        got = [(len(st.B), len(st.L)) for st in trace(Params(k, n, ell)).stages]
        want = stage_counts(k, n, ell)
        if len(got) != len(want) or any(gl != wl or (wb is not None and gb != wb)
                                         for (gb, gl), (wb, wl) in zip(got, want)):
            failures.append(f"{(k, n, ell)}: {got} vs {want}")
    last = {c: 0 for c in (-1, 0, 1)}
    for k, n, ell in cases:
        p = Params(k, n, ell)
        last[p.c] += 1
    with capsys.disabled():
        verdict(3, f"|B_s| and |L_s| on {len(cases)} divisible cases (last-stage split c=-1/0/1: "
                   f"{last[-1]}/{last[0]}/{last[1]})", not failures and all(last.values()), "; ".join(failures[:3]))


def test_criterion_4_necessity_by_oracle(capsys):
    start = time.perf_counter()
    mismatches, checked = [], 0
    for n in range(2, 9):
        for k in range(1, n // 2 + 1):
            for ell in range(1, n):
                found = oracle_enumerate(k, n, ell)
                checked += 1
                if bool(found) != feasible(k, n, ell):
                    mismatches.append((k, n, ell, len(found)))
                if any(not is_rho_symmetric(D, ell)[0] or len(D) != max_size(k, n) for D in found):
                    mismatches.append((k, n, ell, "bad member"))
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        verdict(4, f"symmetric collection exists iff k mod d in {{0,1,d-1}} on {checked} cases, n <= 8",
                not mismatches and elapsed < 600, f"{elapsed:.2f}s; {mismatches[:3]}")


def test_criterion_5_oracle_sanity(capsys):
    results = {}
    for n in (6, 7):
        found = {frozenset(tuple(S.elements) for S in D) for D in oracle_enumerate(2, n)}
        tri = triangulation_collections(n)
        results[n] = (len(found), len(tri), found == tri)
    catalan = {n: comb(2 * (n - 2), n - 2) // (n - 1) for n in (6, 7)}
    ok = results[6][:2] == (14, 14) and results[7][:2] == (42, 42) and all(r[2] for r in results.values())
    with capsys.disabled():
        verdict(5, "oracle counts 14 and 42 match triangulations", ok and catalan == {6: 14, 7: 42},
                f"{results}")


def test_criterion_6_clique_fidelity(capsys):
    D = Collection.parse("123 234 345 456 156 126 136 236 346 356".split(), 6, 3)

    def core(c):
        return "".join(map(str, sorted(c.core)))

    nt = nontrivial_cliques(D)
    whites = {core(c) for c in nt if c.color == WHITE}
    blacks = {core(c) for c in nt if c.color == BLACK}
    w36 = next(c for c in cliques(D) if c.color == WHITE and core(c) == "36")
    b1356 = next(c for c in cliques(D) if c.color == BLACK and core(c) == "1356")
    T = build_tiling(D)
    boundary_ok = all(set(T.boundary_edge(i)) == {interval(i, 3, 6), interval(i % 6 + 1, 3, 6)} for i in range(1, 7))
    ok = (
        whites == {"23", "56", "16", "34", "36"}
        and {S.compact() for S in w36.members} == {"136", "236", "346", "356"}
        and blacks == {"1236", "3456", "2346", "1356"}
        and {S.compact() for S in b1356.members} == {"136", "156", "356"}
        and T.euler_characteristic() == 1
        and boundary_ok
    )
    with capsys.disabled():
        verdict(6, "cliques and tiling of the hexagon example", ok,
                f"white {sorted(whites)}, black {sorted(blacks)}, chi={T.euler_characteristic()}")


def test_criterion_7_duality_round_trip(capsys):
    failures = []
    cases = list(sweep(12))
    for k, n, ell in cases:
        D = generate(k, n, ell)
        if dual_plabic_graph(build_tiling(D)).labels() != D:
            failures.append((k, n, ell))
    with capsys.disabled():
        verdict(7, f"face labels of the dual graph recover D on {len(cases)} cases", not failures, f"{failures[:3]}")


PIPELINES = [
    (3, 6, 3, [3, 2, 1], BraidWord((1, 2) * 6)),
    (2, 6, 3, [2, 1], BraidWord((1,) * 6)),
    (4, 8, 2, [4, 3, 2, 1], BraidWord((1, 2, 3) * 8)),
]


def test_criterion_8_pipeline(capsys):
    failures, summary = [], []
    for k, n, ell, ranks, braid in PIPELINES:
        start = time.perf_counter()
        r = symmetric_weave_pipeline(k, n, ell)
        elapsed = time.perf_counter() - start
        certs = {level: c.ok for level, c in r.certificates.items()}
        checks = {
            "ranks": r.ranks == ranks,
            "layers": r.weave is not None and len(r.layers) == k - 1,
            "valid": r.weave is not None and validate_ngraph(r.weave) == [],
            "braid": r.braid == braid,
            "certificates": certs == {"tiling": True, "graph": True, "weave": True},
            "runtime": elapsed < 5,
        }
        failures += [f"{(k, n, ell)} {name}" for name, ok in checks.items() if not ok]
        summary.append(f"{(k, n, ell)} ranks {r.ranks} in {elapsed:.3f}s")
    with capsys.disabled():
        verdict(8, "pipelines (3,6,3), (2,6,3), (4,8,2) with braids and certificates", not failures,
                "; ".join(failures or summary))


def test_criterion_9_folding_case(capsys):
    p = Params(3, 6, 4)
    tr = trace(p)
    kept = tr.union(skip=p.ell - p.g)
    D = generate(3, 6, 4)
    # F(a + 2x) = a + 4x for a in {1, 2}
    F = {a + 2 * x: a + 4 * x for a in (1, 2) for x in range(3)}
    ok = (
        (p.g, p.d) == (2, 3)
        and tr.params.n == 12
        and all(len(st.L) > 0 for st in tr.stages[:2])
        and sum(len(st.L) for st in tr.stages[2:]) == 10
        and {fold_map_invert(J, p) for J in kept} == set(D)
        and all(fold_map_apply(S, p).elements == tuple(sorted(F[x] for x in S)) for S in D)
        and len(D) == 10
        and not standard_checks(D, 3, 6, 4)
    )
    with capsys.disabled():
        verdict(9, "folding path for (3,6,4) via n'=12", ok, f"|D|={len(D)}, {' '.join(D.compact())}")


def test_criterion_10_informal_equals_formal(capsys):
    cases = list(sweep(9, half=False, divisible_only=True))
    diffs = []
    for k, n, ell in cases:
        p = Params(k, n, ell)
        if informal_generate(p) != generate_divisible(p):
            diffs.append((k, n, ell))
    with capsys.disabled():
        verdict(10, f"informal walk equals the formal generator on {len(cases)} divisible cases, n <= 9", not diffs, f"{diffs}")
