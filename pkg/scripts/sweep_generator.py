"""Generate a symmetric maximal collection for every feasible (k, n, ell) in a
range and check size, weak separation, closure and stage counts.

    python3 scripts/sweep_generator.py --max-n 14
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from symwsc.core import Params, cyclic_intervals, is_rho_symmetric, is_ws_collection, max_size
from symwsc.generator import generate, trace


@dataclass
class SweepConfig:
    min_n: int = 2
    max_n: int = 12
    half_only: bool = True
    csv_path: str | None = None


def run(cfg: SweepConfig) -> list[dict]:
    rows = []
    for n in range(cfg.min_n, cfg.max_n + 1):
        for k in range(1, n):
            if cfg.half_only and 2 * k > n:
                continue
            for ell in range(1, n):
                p = Params(k, n, ell)
                if not p.feasible:
                    continue
                start = time.perf_counter()
                D = generate(k, n, ell)
                seconds = time.perf_counter() - start
                tr = trace(p)
                stages = [len(st.L) for st in tr.stages]
                predicted_ok = all(
                    st.predicted is None
                    or (st.predicted["L"] == len(st.L) and st.predicted["B"] in (None, len(st.B)))
                    for st in tr.stages
                )
                rows.append({
                    "k": k, "n": n, "ell": ell, "d": p.d, "c": p.c, "divisible": p.divisible,
                    "size": len(D), "expected": max_size(k, n),
                    "ws": is_ws_collection(D)[0], "symmetric": is_rho_symmetric(D, ell)[0],
                    "intervals": set(cyclic_intervals(k, n)) <= set(D),
                    "stage_sizes": " ".join(map(str, stages)), "predicted_ok": predicted_ok,
                    "seconds": round(seconds, 5),
                })
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=SweepConfig.min_n)
    ap.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    ap.add_argument("--all-k", action="store_true", help="include k > n/2 (via complements)")
    ap.add_argument("--csv", dest="csv_path")
    a = ap.parse_args(argv)
    cfg = SweepConfig(a.min_n, a.max_n, not a.all_k, a.csv_path)
    rows = run(cfg)
    bad = [r for r in rows if not (r["size"] == r["expected"] and r["ws"] and r["symmetric"]
                                   and r["intervals"] and r["predicted_ok"])]
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    total = sum(r["seconds"] for r in rows)
    print(f"{len(rows)} feasible cases, {len(bad)} failures, {total:.2f}s generating")
    for r in bad:
        print("FAIL", r)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
