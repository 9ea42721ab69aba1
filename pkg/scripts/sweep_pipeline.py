"""Run the full symmetric weave pipeline over a parameter range and tabulate
ranks, braid length, fixed sites and certificate outcomes.

    python3 scripts/sweep_pipeline.py --max-n 10
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from symwsc.core import Params
from symwsc.weave import BraidWord, symmetric_weave_pipeline


@dataclass
class PipelineSweepConfig:
    min_n: int = 3
    max_n: int = 10
    min_k: int = 2


def run(cfg: PipelineSweepConfig) -> list[dict]:
    rows = []
    for n in range(cfg.min_n, cfg.max_n + 1):
        for k in range(cfg.min_k, n // 2 + 1):
            for ell in range(1, n):
                if not Params(k, n, ell).feasible:
                    continue
                r = symmetric_weave_pipeline(k, n, ell)
                rows.append({
                    "k": k, "n": n, "ell": ell, "ok": r.ok,
                    "ranks": r.ranks, "torus_braid": r.braid == BraidWord.torus(k, n),
                    "fixed_sites": len(r.fixed_sites),
                    "weave_vertices": len(r.weave.vertices) if r.weave else 0,
                    "certificates": "".join("+" if c.ok else "-" for _, c in sorted(r.certificates.items())),
                    "seconds": r.seconds,
                })
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=PipelineSweepConfig.min_n)
    ap.add_argument("--max-n", type=int, default=PipelineSweepConfig.max_n)
    a = ap.parse_args(argv)
    rows = run(PipelineSweepConfig(a.min_n, a.max_n))
    print(f"{'k':>3} {'n':>3} {'ell':>3}  ok  braid  fixed  vertices  certs(g,t,w)  seconds")
    for r in rows:
        print(f"{r['k']:>3} {r['n']:>3} {r['ell']:>3}  {'y' if r['ok'] else 'n':>2}  "
              f"{'y' if r['torus_braid'] else 'n':>5}  {r['fixed_sites']:>5}  {r['weave_vertices']:>8}  "
              f"{r['certificates']:>12}  {r['seconds']:.3f}")
    bad = [r for r in rows if not (r["ok"] and r["torus_braid"])]
    print(f"{len(rows)} runs, {len(bad)} failures, slowest {max(r['seconds'] for r in rows):.3f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
