"""Exhaustive check that a rho^ell-symmetric maximal weakly separated
collection exists exactly when k mod d is 0, 1 or d-1.

Symmetric-mode enumeration is cross-checked against the full enumeration
(filtered for symmetry) wherever the latter fits the search budget.

    python3 scripts/oracle_necessity.py --max-n 8
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from symwsc.core import Params, is_rho_symmetric
from symwsc.oracle import OracleBudgetError, oracle_enumerate


@dataclass
class NecessityConfig:
    max_n: int = 8
    cross_check: bool = True


def run(cfg: NecessityConfig) -> tuple[list[dict], list[str]]:
    rows, problems = [], []
    for n in range(2, cfg.max_n + 1):
        for k in range(1, n // 2 + 1):
            full = None
            if cfg.cross_check:
                try:
                    full = oracle_enumerate(k, n)
                except OracleBudgetError:
                    full = None
            for ell in range(1, n):
                p = Params(k, n, ell)
                start = time.perf_counter()
                try:
                    found = oracle_enumerate(k, n, ell)
                except OracleBudgetError as exc:
                    problems.append(f"{(k, n, ell)}: {exc}")
                    continue
                row = {"k": k, "n": n, "ell": ell, "d": p.d, "feasible": p.feasible,
                       "count": len(found), "seconds": time.perf_counter() - start}
                if bool(found) != p.feasible:
                    problems.append(f"{(k, n, ell)}: feasible={p.feasible} but {len(found)} found")
                if full is not None:
                    filtered = {tuple(D) for D in full if is_rho_symmetric(D, ell)[0]}
                    if filtered != {tuple(D) for D in found}:
                        problems.append(f"{(k, n, ell)}: symmetric mode disagrees with filtered full search")
                rows.append(row)
    return rows, problems


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=NecessityConfig.max_n)
    ap.add_argument("--no-cross-check", action="store_true")
    a = ap.parse_args(argv)
    rows, problems = run(NecessityConfig(a.max_n, not a.no_cross_check))
    for r in rows:
        print(f"k={r['k']} n={r['n']} ell={r['ell']} d={r['d']} feasible={r['feasible']!s:5} "
              f"symmetric collections={r['count']}")
    print(f"{len(rows)} cases, {len(problems)} problems")
    for p in problems:
        print("PROBLEM", p)
    return 1 if problems else 0


if __name__ == "__main__":
    sys.exit(main())
