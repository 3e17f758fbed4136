"""``hopmst`` command line.

Exit codes: 0 success, 1 infeasible instance, 2 input error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .baseline import solve_matching_baseline
from .bench import BenchConfig, emit_report, records_to_csv, records_to_json, run_bench
from .charging import check_sum_of_exps, estimate_claim_hard, verify_claim_med
from .errors import HopMSTError, InputError
from .graph import FAMILIES, dump_graph, generate, load_tree_json, read_graph
from .hopdist import INF, hop_bellman_ford
from .oracle import brute_force_opt, ratio_report
from .sampler import SolveParams, solve, solve_amplified

log = logging.getLogger("hopmst")


def parse_seeds(text: str) -> list[int]:
    """'0..49' (inclusive) or '1,5,9'."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise InputError(f"bad seed list {text!r}") from None


def _emit(args, text: str, path: str | None = None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _num(x):
    return None if x == INF else x


def cmd_solve(args) -> int:
    g = read_graph(args.input)
    g.require_connected()
    extra = {}
    if args.algo == "matching":
        tree, rounds = solve_matching_baseline(g, args.h)
        trace = None
        extra = {"rounds_used": rounds, "seed": None, "algorithm": "matching"}
    else:
        params = SolveParams(args.epsilon, args.h, args.seed)
        if args.trials and args.trials > 1:
            amp = solve_amplified(g, params, args.trials)
            tree, trace = amp.tree, amp.trace
            extra = {"trials": args.trials, "best_trial": amp.best_trial, "trial_weights": amp.weights}
        else:
            tree, trace = solve(g, params)
        extra = {"rounds_used": trace.rounds_used, "seed": trace.seed, **extra}
    if args.trace:
        if trace is None:
            raise InputError("--trace is only available for the sampling algorithm")
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(trace.to_list(), fh, indent=2)
            fh.write("\n")
    doc = tree.to_dict(**extra)
    if args.format == "json":
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = (
            f"weight {tree.total_weight!r}\nhop_diameter {tree.hop_diameter}\n"
            f"rounds_used {doc['rounds_used']}\nroot {tree.root}\n"
            + "".join(f"{u} {v} {w!r}\n" for u, v, w in tree.edges)
        )
    _emit(args, text, args.output)
    return 0


def cmd_dist(args) -> int:
    g = read_graph(args.input)
    table = hop_bellman_ford(g, args.source, args.h)
    if args.format == "json":
        text = json.dumps({"source": args.source, "h": args.h, "dist": [_num(d) for d in table.dist]}) + "\n"
    else:
        text = " ".join("inf" if d == INF else repr(d) for d in table.dist) + "\n"
    _emit(args, text)
    return 0


def cmd_verify(args) -> int:
    g = read_graph(args.input)
    with open(args.reference, encoding="utf-8") as fh:
        reference = load_tree_json(g, fh.read())
    tree, trace = solve(g, SolveParams(args.epsilon, args.h, args.seed))
    checks = verify_claim_med(trace, reference, g)
    hard = estimate_claim_hard(reference, args.epsilon, args.trials, args.seed, root=trace.root)
    n = g.n
    total, bound, ok = check_sum_of_exps(float(n) ** args.epsilon, max(1, 2 * (n - 1)))
    report = {
        "per_round": [c.to_dict() for c in checks],
        "claim_med": all(c.ok for c in checks),
        "claim_hard": hard.to_dict(),
        "sum_exps": ok,
        "sum_exps_detail": {"sum": total, "bound": bound},
    }
    _emit(args, json.dumps(report, indent=2) + "\n")
    passed = report["claim_med"] and hard.passed and ok
    return 0 if passed else 3


def cmd_oracle(args) -> int:
    g = read_graph(args.input)
    g.require_connected()
    opt = brute_force_opt(g, args.h)
    doc = {
        "h": args.h,
        "opt_weight": _num(opt.opt_weight),
        "trees_enumerated": opt.trees_enumerated,
        "witness": opt.witness.to_dict() if opt.witness else None,
    }
    if args.ratios:
        if args.epsilon is None:
            raise InputError("--ratios needs --epsilon")
        report = ratio_report(g, args.h, args.epsilon, parse_seeds(args.seeds), opt=opt)
        doc["ratios"] = report.summary()
        doc["runs"] = [vars(r) for r in report.rows]
    if args.format == "json":
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = f"opt_weight {doc['opt_weight']}\ntrees_enumerated {opt.trees_enumerated}\n"
        if args.ratios:
            text += "".join(f"{k} {v}\n" for k, v in doc["ratios"].items())
    _emit(args, text)
    return 0 if opt.feasible else 1


def cmd_bench(args) -> int:
    config = BenchConfig.load(args.config)
    if args.workers:
        config.workers = args.workers
    fmt = args.format if args.format != "text" else config.format
    records, _ = run_bench(config)
    timing = not args.no_timing
    text = records_to_json(records, timing=timing) if fmt == "json" else records_to_csv(records, timing=timing)
    _emit(args, text, args.output or config.output)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(emit_report(records, fmt))
    return 0


def cmd_gen(args) -> int:
    params = {"weights": args.weights}
    if args.p is not None:
        params["p"] = args.p
    g = generate(args.family, args.n, params, args.seed)
    _emit(args, dump_graph(g), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["json", "text", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="hopmst", parents=[common],
                                     description="Hop-bounded minimum spanning trees by random sampling.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve one instance")
    p.add_argument("--input", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--trace")
    p.add_argument("--output")
    p.add_argument("--algo", choices=["sampling", "matching"], default="sampling")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("dist", parents=[common], help="print one d_h row")
    p.add_argument("--input", required=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("verify", parents=[common], help="check the charging inequalities on a run")
    p.add_argument("--input", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--trials", type=int, default=2000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="brute-force OPT_h on a tiny graph")
    p.add_argument("--input", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--ratios", action="store_true")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--seeds", default="0..49")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", parents=[common], help="run a benchmark sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--output")
    p.add_argument("--report", help="also write the per-epsilon tradeoff summary here")
    p.add_argument("--workers", type=int)
    p.add_argument("--no-timing", action="store_true", help="omit the wall_time column")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", parents=[common], help="generate an instance")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--weights", choices=["unit", "int", "uniform"], default="unit")
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.seed = getattr(args, "seed", 0)
    args.format = getattr(args, "format", "text")
    args.quiet = getattr(args, "quiet", False)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.INFO, format="%(message)s")
    try:
        return args.func(args)
    except HopMSTError as exc:
        if not args.quiet:
            log.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    except OSError as exc:
        if not args.quiet:
            log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
