"""Command-line interface: JSON on stdout, logs on stderr.

Exit codes: 0 success (``check``: consistent), 1 ``check`` found
violations, 2 any error (payload ``{"error": ..., "message": ...}``).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from .consistency import check
from .datagraph import DataGraph, GraphError, MultisetPreference, SymbolOrder, WeightPreference, WeightSpec
from .eval import eval_node, eval_path
from .gxpath import ConstraintSet, ParseError, parse_node, parse_path
from .reductions import encode, parse_dimacs, write_instance
from .repair import (
    BudgetExceeded, SearchBudget, brute_preferred, decide_pi_mset, decide_pi_w, find_preferred_subset_repair,
    find_preferred_superset_repair,
)

log = logging.getLogger("gxrepair")


class UsageError(Exception):
    pass


def _emit(payload, pretty: bool):
    if pretty:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":")))


def _criterion(spec: Optional[str]):
    if spec is None:
        return None
    kind, sep, path = spec.partition(":")
    if not sep or not path:
        raise UsageError(f"--prefer expects weight:FILE or mset:FILE, got {spec!r}")
    if kind == "weight":
        return WeightPreference(WeightSpec.load(path))
    if kind == "mset":
        return MultisetPreference(SymbolOrder.load(path))
    raise UsageError(f"unknown preference kind {kind!r}")


def _budget(args) -> SearchBudget:
    return SearchBudget(max_new_nodes=args.budget_nodes, max_explored=args.max_explored)


def cmd_check(args) -> int:
    verdict = check(DataGraph.load(args.graph), ConstraintSet.load(args.constraints), args.first_violation)
    _emit(verdict.to_json(), args.pretty)
    return 0 if verdict.consistent else 1


def cmd_eval(args) -> int:
    g = DataGraph.load(args.graph)
    if args.sort == "node":
        _emit(sorted(eval_node(g, parse_node(args.expr))), args.pretty)
    else:
        _emit([list(p) for p in sorted(eval_path(g, parse_path(args.expr)))], args.pretty)
    return 0


def cmd_repair(args) -> int:
    g = DataGraph.load(args.graph)
    r = ConstraintSet.load(args.constraints)
    crit = _criterion(args.prefer)
    budget = _budget(args)
    if args.oracle:
        res = brute_preferred(g, r, crit, args.mode, budget, args.all_optima)
    elif args.mode == "subset":
        res = find_preferred_subset_repair(g, r, crit, all_optima=args.all_optima, max_explored=args.max_explored)
    else:
        res = find_preferred_superset_repair(g, r, crit, budget, all_optima=args.all_optima)
    log.info("explored %d candidates", res.explored)
    _emit(res.to_json(), args.pretty)
    return 0


def cmd_decide(args) -> int:
    g = DataGraph.load(args.graph)
    r = ConstraintSet.load(args.constraints)
    budget = _budget(args)
    if args.problem == "pw":
        if args.weights is None:
            raise UsageError("--problem pw needs --weights")
        answer = decide_pi_w(g, r, WeightSpec.load(args.weights), args.K, budget)
    else:
        if args.order is None or args.label is None:
            raise UsageError("--problem pmset needs --order and --label")
        answer = decide_pi_mset(g, r, SymbolOrder.load(args.order), args.label, args.K, budget)
    _emit("unknown_beyond_budget" if answer is None else answer, args.pretty)
    return 0


def cmd_gen_sat(args) -> int:
    with open(args.cnf, encoding="utf-8") as fh:
        cnf = parse_dimacs(fh.read())
    inst = encode(cnf)
    out = write_instance(inst, args.out)
    _emit({"dir": str(out), "K_w": inst.k_w, "K_mset": inst.k_mset, "label": inst.label}, args.pretty)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gxrepair", description=__doc__.splitlines()[0])
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    p.add_argument("--threads", type=int, default=None,
                   help="parallelism cap (falls back to GXREPAIR_THREADS; searches currently run serially)")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide consistency and list violations")
    c.add_argument("-g", "--graph", required=True)
    c.add_argument("-c", "--constraints", required=True)
    c.add_argument("--first-violation", action="store_true")
    c.set_defaults(run=cmd_check)

    e = sub.add_parser("eval", help="evaluate one expression")
    e.add_argument("-g", "--graph", required=True)
    e.add_argument("-e", "--expr", required=True)
    e.add_argument("--sort", choices=("node", "path"), required=True)
    e.set_defaults(run=cmd_eval)

    def budget_flags(sp):
        sp.add_argument("--budget-nodes", type=int, default=0, help="fresh nodes a superset may add")
        sp.add_argument("--max-explored", type=int, default=500_000, help="cap on candidates examined")

    r = sub.add_parser("repair", help="compute a (preferred) repair")
    r.add_argument("-g", "--graph", required=True)
    r.add_argument("-c", "--constraints", required=True)
    r.add_argument("--mode", choices=("subset", "superset"), required=True)
    r.add_argument("--prefer", metavar="weight:FILE|mset:FILE")
    r.add_argument("--all-optima", action="store_true")
    r.add_argument("--oracle", action="store_true", help="use the exhaustive powerset enumerator")
    budget_flags(r)
    r.set_defaults(run=cmd_repair)

    d = sub.add_parser("decide", help="weight / multiset superset-repair decision problems")
    d.add_argument("--problem", choices=("pw", "pmset"), required=True)
    d.add_argument("-g", "--graph", required=True)
    d.add_argument("-c", "--constraints", required=True)
    d.add_argument("-K", type=int, required=True)
    d.add_argument("--weights")
    d.add_argument("--order")
    d.add_argument("--label")
    budget_flags(d)
    d.set_defaults(run=cmd_decide)

    s = sub.add_parser("gen-sat", help="write the repair instance of a DIMACS 3-CNF")
    s.add_argument("--cnf", required=True)
    s.add_argument("-o", "--out", required=True)
    s.set_defaults(run=cmd_gen_sat)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    threads = args.threads or int(os.environ.get("GXREPAIR_THREADS", "1") or 1)
    log.info("thread cap %d (serial search)", threads)
    try:
        return args.run(args)
    except (ParseError, GraphError, BudgetExceeded, UsageError, OverflowError, OSError, ValueError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.pretty)
        return 2


if __name__ == "__main__":
    sys.exit(main())
