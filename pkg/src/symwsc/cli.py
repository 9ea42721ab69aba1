"""Command-line entry point.

Exit codes: 0 success, 1 infeasible parameters, 2 validation failure,
3 malformed input.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from .core import (
    Collection,
    Params,
    cyclic_intervals,
    feasibility,
    is_rho_symmetric,
    is_ws_collection,
    max_size,
)
from .generator import InfeasibleError, generate, informal_generate, parse_order, trace
from .oracle import OracleBudgetError, oracle_enumerate
from .plabic import EquivariantResolution, PlabicGraph, dual_plabic_graph, resolve_trivalent
from .render import RenderError, render
from .serialize import SchemaError, deserialize, dumps, envelope
from .tiling import PlabicTiling, TilingError, build_tiling, cliques
from .weave import (
    PipelineReport,
    WeaveGraph,
    assemble_weave,
    iterate_t_shift,
    symmetric_weave_pipeline,
    t_shift,
    validate_ngraph,
)

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_MALFORMED = 0, 1, 2, 3

COMMANDS = ("feasible", "generate", "verify", "cliques", "tiling", "dual", "tshift", "weave",
            "pipeline", "oracle", "render")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-k", type=int)
    common.add_argument("-n", type=int)
    common.add_argument("-l", "--ell", type=int, dest="ell")
    common.add_argument("--order", type=str, help="orbit order as a permutation, e.g. 3,2,1")
    common.add_argument("--in", dest="inp", type=str, help="input JSON document ('-' for stdin)")
    common.add_argument("--out", type=str, help="output path (default stdout)")
    common.add_argument("--format", type=str, default=None, help="json | text, or svg | tikz for render")
    common.add_argument("--seedless", action="store_true", help="refuse any nondeterministic fallback")

    p = _Parser(prog="symwsc", description="Symmetric weakly separated collections, plabic graphs and weaves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("feasible", parents=[common], help="existence test and k = d*r + c")
    g = sub.add_parser("generate", parents=[common], help="generate a symmetric maximal collection")
    g.add_argument("--trace", action="store_true", help="emit the stage trace instead")
    g.add_argument("--informal", action="store_true", help="use the left-removal/right-append walk")
    sub.add_parser("verify", parents=[common], help="check a collection (give -l to test symmetry)")
    sub.add_parser("cliques", parents=[common], help="white and black cliques")
    sub.add_parser("tiling", parents=[common], help="plabic tiling")
    sub.add_parser("dual", parents=[common], help="dual plabic graph")
    t = sub.add_parser("tshift", parents=[common], help="iterated T-shift of the trivalent dual")
    t.add_argument("--times", type=int, default=1)
    sub.add_parser("weave", parents=[common], help="weave N-graph")
    pl = sub.add_parser("pipeline", parents=[common], help="collection -> tiling -> graph -> weave with certificates")
    pl.add_argument("--sweep", type=str, help='parameter grid "kmin..kmax,nmin..nmax,lmin..lmax"')
    o = sub.add_parser("oracle", parents=[common], help="exhaustive enumeration at small size")
    o.add_argument("--budget", type=int, default=None)
    r = sub.add_parser("render", parents=[common], help="SVG or TikZ drawing")
    r.add_argument("--what", choices=("tiling", "graph", "weave"), default=None)
    return p


# -- helpers ------------------------------------------------------------------------


def _params(a: argparse.Namespace, need_ell: bool = True) -> Params:
    if a.k is None or a.n is None or (need_ell and a.ell is None):
        raise UsageError("give -k, -n" + (" and -l" if need_ell else ""))
    return Params(a.k, a.n, a.ell if a.ell is not None else 1)


def _order(a: argparse.Namespace) -> tuple[int, ...] | None:
    return parse_order(a.order) if a.order else None


def _read(a: argparse.Namespace) -> Any:
    text = sys.stdin.read() if a.inp == "-" else Path(a.inp).read_text()
    return deserialize(text)


def _collection(a: argparse.Namespace) -> Collection:
    """Collection from ``--in`` (collection, tiling or pipeline document) or by generation."""
    if a.inp:
        obj = _read(a)
        if isinstance(obj, Collection):
            return obj
        if isinstance(obj, PlabicTiling):
            return obj.collection
        if isinstance(obj, PipelineReport):
            return obj.collection
        raise SchemaError(f"expected a collection, got {type(obj).__name__}")
    p = _params(a)
    return generate(p.k, p.n, p.ell, _order(a))


def _policy(a: argparse.Namespace) -> EquivariantResolution:
    return EquivariantResolution(a.ell)


def _inputs(a: argparse.Namespace) -> dict:
    keys = ("command", "k", "n", "ell", "order", "inp", "seedless", "sweep", "times", "trace", "informal", "what")
    return {k: getattr(a, k) for k in keys if getattr(a, k, None) not in (None, False)}


def _parse_range(text: str) -> range:
    lo, _, hi = text.partition("..")
    lo, hi = int(lo), int(hi or lo)
    return range(lo, hi + 1)


def _verify(D: Collection, ell: int | None) -> dict:
    ws, bad = is_ws_collection(D)
    missing = [I.compact() for I in cyclic_intervals(D.k, D.n) if I not in D]
    report = {
        "n": D.n, "k": D.k, "size": len(D), "max_size": max_size(D.k, D.n),
        "weakly_separated": ws, "failing_pairs": [[S.compact(), T.compact()] for S, T in bad],
        "maximal": ws and len(D) == max_size(D.k, D.n), "missing_intervals": missing,
    }
    if ell is not None:
        sym, viol = is_rho_symmetric(D, ell)
        report.update(ell=ell, symmetric=sym, violators=[S.compact() for S in viol])
    report["ok"] = report["weakly_separated"] and report["maximal"] and not missing and report.get("symmetric", True)
    return report


# -- commands -----------------------------------------------------------------------


def _run(a: argparse.Namespace) -> tuple[Any, int]:
    cmd = a.command
    if cmd == "feasible":
        p = _params(a)
        rep = feasibility(p.k, p.n, p.ell).as_dict()
        return rep, EXIT_OK if rep["feasible"] else EXIT_INFEASIBLE
    if cmd == "generate":
        p = _params(a)
        if a.trace:
            return trace(p, _order(a)), EXIT_OK
        if a.informal:
            return informal_generate(p, _order(a)), EXIT_OK
        return generate(p.k, p.n, p.ell, _order(a)), EXIT_OK
    if cmd == "verify":
        if not a.inp:
            raise UsageError("verify needs --in")
        rep = _verify(_collection(a), a.ell)
        return rep, EXIT_OK if rep["ok"] else EXIT_INVALID
    if cmd == "cliques":
        D = _collection(a)
        return {"n": D.n, "k": D.k, "cliques": [
            {"color": c.color, "core": sorted(c.core), "members": [S.compact() for S in c.members],
             "nontrivial": c.nontrivial}
            for c in cliques(D)]}, EXIT_OK
    if cmd == "tiling":
        return build_tiling(_collection(a)), EXIT_OK
    if cmd == "dual":
        return dual_plabic_graph(build_tiling(_collection(a))), EXIT_OK
    if cmd == "tshift":
        G, _ = resolve_trivalent(dual_plabic_graph(build_tiling(_collection(a))), _policy(a))
        if not 1 <= a.times <= G.rank() - 1:
            raise UsageError(f"--times must lie in 1..{G.rank() - 1}")
        for _ in range(a.times):
            G = t_shift(G, _policy(a)).graph
        return G, EXIT_OK
    if cmd == "weave":
        G, _ = resolve_trivalent(dual_plabic_graph(build_tiling(_collection(a))), _policy(a))
        W = assemble_weave(G, iterate_t_shift(G, _policy(a)))
        return W, EXIT_OK if not validate_ngraph(W) else EXIT_INVALID
    if cmd == "pipeline":
        if a.sweep:
            return _sweep(a.sweep)
        p = _params(a)
        rep = symmetric_weave_pipeline(p.k, p.n, p.ell, _order(a))
        return rep, EXIT_OK if rep.ok else EXIT_INVALID
    if cmd == "oracle":
        p = _params(a, need_ell=False)
        found = oracle_enumerate(p.k, p.n, a.ell, a.budget)
        return {"k": p.k, "n": p.n, "ell": a.ell, "count": len(found),
                "collections": [D.compact() for D in found]}, EXIT_OK
    if cmd == "render":
        return _render_target(a), EXIT_OK
    raise UsageError(f"unknown command {cmd}")


def _render_target(a: argparse.Namespace) -> Any:
    obj = _read(a) if a.inp else None
    what = a.what
    if obj is None or isinstance(obj, (Collection, PlabicTiling)):
        D = _collection(a) if obj is None else (obj if isinstance(obj, Collection) else obj.collection)
        what = what or "tiling"
        if what == "tiling":
            return build_tiling(D)
        if what == "graph":
            return dual_plabic_graph(build_tiling(D))
        if a.ell is None:
            raise UsageError("rendering a weave from a collection needs -l")
        return symmetric_weave_pipeline(D.k, D.n, a.ell, _order(a)).weave
    if isinstance(obj, PipelineReport):
        return {"tiling": obj.tiling, "graph": obj.graph, "weave": obj.weave}[what or "weave"]
    if isinstance(obj, (PlabicGraph, WeaveGraph)):
        return obj
    raise SchemaError(f"cannot render a {type(obj).__name__}")


def _sweep(text: str) -> tuple[dict, int]:
    try:
        kr, nr, lr = (_parse_range(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --sweep {text!r}: {exc}") from exc
    rows = []
    for n in nr:
        for k in kr:
            for ell in lr:
                if not (1 <= k <= n - 1 and 1 <= ell <= n - 1):
                    continue
                p = Params(k, n, ell)
                if not p.feasible:
                    rows.append({"k": k, "n": n, "ell": ell, "feasible": False})
                    continue
                rep = symmetric_weave_pipeline(k, n, ell)
                rows.append({
                    "k": k, "n": n, "ell": ell, "feasible": True, "ok": rep.ok, "size": len(rep.collection),
                    "ranks": rep.ranks, "braid": str(rep.braid), "fixed_sites": len(rep.fixed_sites),
                    "certificates": {key: c.ok for key, c in sorted(rep.certificates.items())},
                })
    bad = [r for r in rows if r.get("feasible") and not r["ok"]]
    return {"sweep": text, "runs": rows, "failures": len(bad)}, EXIT_INVALID if bad else EXIT_OK


def _text(obj: Any) -> str:
    if isinstance(obj, Collection):
        return " ".join(obj.compact()) + "\n"
    return dumps(envelope(obj)) if not isinstance(obj, dict) else dumps(obj)


def main(argv: Sequence[str] | None = None) -> int:
    started = time.perf_counter()
    try:
        a = _parser().parse_args(argv)
        result, code = _run(a)
        fmt = a.format or ("svg" if a.command == "render" else "json")
        if a.command == "render":
            if fmt not in ("svg", "tikz"):
                raise UsageError(f"render --format must be svg or tikz, not {fmt}")
            text = render(result, fmt)
        elif fmt == "text":
            text = _text(result)
        elif fmt == "json":
            text = dumps(envelope(result, _inputs(a), {"seconds": round(time.perf_counter() - started, 6)}))
        else:
            raise UsageError(f"unknown --format {fmt}")
        if a.out:
            Path(a.out).write_text(text)
        else:
            sys.stdout.write(text)
        return code
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, SchemaError, TilingError, OracleBudgetError, RenderError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    raise SystemExit(main())
