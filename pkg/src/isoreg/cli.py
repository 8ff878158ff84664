"""Command line front end: ``isoreg regress|violator|oracle|bench``.

Exit status is 0 on success, 2 for bad input and 3 when an exhaustive
oracle refuses an instance as too large.  Errors go to standard error
prefixed with ``isoreg-error:``.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from fractions import Fraction

from .errors import IsoregError, TooLarge
from .instances import BoxSet, resolve_order
from .io import format_number, format_result, parse_instance
from .l0 import l0_regress
from .linear import chain_regress
from .oracle import oracle_l2_maxmin, oracle_regress
from .order import Dag, Metric, RegressionResult, WeightedFunction, regression_error
from .partition import DEFAULT_WEIGHT_SCALE, l1_regress, l2_exact, lp_approx
from .violator import boxes_to_domination

EXIT_OK, EXIT_INPUT, EXIT_TOO_LARGE = 0, 2, 3


class InputError(IsoregError):
    pass


def _add_common(p, metric=True):
    p.add_argument("--input", required=True, help="instance file (format v1)")
    p.add_argument("--output", help="write results here instead of standard output")
    p.add_argument("--order", default="auto", choices=["auto", "dag", "chain", "points", "boxes"],
                   help="expected instance kind; auto accepts whatever the file header says")
    p.add_argument("--violator", default="auto", choices=["auto", "closure", "rendezvous", "pairwise"],
                   help="violator dag construction")
    p.add_argument("--format", default="text", choices=["text", "json"])
    if metric:
        _add_metric(p)


def _add_metric(p):
    p.add_argument("--metric", default="l2", choices=["l0", "l1", "l2", "lp"])
    p.add_argument("--p", type=float, help="exponent for --metric lp")
    p.add_argument("--delta", help="grid spacing for --metric lp (decimal or p/q); default range/2^20")
    p.add_argument("--weight-scale", type=int, default=DEFAULT_WEIGHT_SCALE,
                   help="integer scale for lp derivative weights")


def build_parser():
    parser = argparse.ArgumentParser(prog="isoreg", description="Isotonic regression on partial orders.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("regress", help="fit an isotonic regression"))
    vp = sub.add_parser("violator", help="build a violator dag")
    _add_common(vp, metric=False)
    vp.add_argument("--stats", action="store_true", help="print only sizes, not edges")
    _add_common(sub.add_parser("oracle", help="brute-force reference (small instances only)"))
    bp = sub.add_parser("bench", help="time the solvers on a random dag")
    bp.add_argument("--n", type=int, default=2000)
    bp.add_argument("--edges", type=int, default=10000)
    bp.add_argument("--max-value", type=int, default=1000)
    bp.add_argument("--seed", type=int, default=0)
    bp.add_argument("--output")
    bp.add_argument("--format", default="text", choices=["text", "json"])
    _add_metric(bp)
    return parser


def _load(args):
    parsed = parse_instance(args.input)
    if args.order != "auto" and args.order != parsed.kind:
        raise InputError(f"--order {args.order} but the file holds a {parsed.kind} instance")
    return parsed


def _delta(text):
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--delta must be a positive number, got {text!r}") from None


def _metric_name(args):
    return "lp" if args.metric == "lp" else args.metric


def _regress(instance, wf, kind, args):
    metric = args.metric
    strategy = args.violator
    if kind == "chain" and metric in ("l0", "l1", "l2") and strategy == "auto":
        result = chain_regress(wf, metric)
        result.diagnostics.setdefault("strategy", "chain")
        return result
    if metric == "l0":
        return l0_regress(instance, wf, strategy)
    if metric == "l1":
        return l1_regress(instance, wf, strategy)
    if metric == "l2":
        return l2_exact(instance, wf, strategy)
    if args.p is None:
        raise InputError("--metric lp needs --p")
    return lp_approx(instance, wf, p=args.p, delta=_delta(args.delta), violator_strategy=strategy,
                     weight_scale=args.weight_scale)


def cmd_regress(args):
    parsed = _load(args)
    result = _regress(parsed.instance, parsed.wf, parsed.kind, args)
    return format_result(result, _metric_name(args), args.format)


def cmd_violator(args):
    parsed = _load(args)
    order = resolve_order(parsed.instance, args.violator)
    vd, pos = order.violator(list(parsed.wf.values))
    # closure violators skip vertices in no violating pair; those are reported as pruned
    stats = {"n": len(parsed.wf), "pruned": len(parsed.wf) - vd.real_count, "n_hat": vd.n_hat,
             "m_hat": vd.m_hat, "steiner_count": vd.steiner_count, "origin": vd.origin}
    if args.format == "json":
        body = dict(stats)
        if not args.stats:
            body["edges"] = [[_vertex(pos, vd, u), _vertex(pos, vd, v)] for u, v in vd.edges.tolist()]
        return json.dumps(body) + "\n"
    out = [f"{k} {v}" for k, v in stats.items()]
    if not args.stats:
        out.extend(f"e {_vertex(pos, vd, u)} {_vertex(pos, vd, v)}" for u, v in vd.edges.tolist())
    return "\n".join(out) + "\n"


def _vertex(pos, vd, x):
    # original vertices by their instance id, Steiner vertices as s<k>
    return str(pos[x]) if x < vd.real_count else f"s{x - vd.real_count}"


def cmd_oracle(args):
    parsed = _load(args)
    wf = parsed.wf
    instance = parsed.instance
    if isinstance(instance, BoxSet):
        instance = boxes_to_domination(instance.lower, instance.upper)
    if args.metric == "l2":
        vals = oracle_l2_maxmin(instance, wf)
        if any(v is None for v in vals):
            raise InputError("the max-min oracle needs positive weights")
        result = RegressionResult(vals, regression_error(wf, vals, "L2"), {"oracle": "maxmin"})
    elif args.metric in ("l0", "l1"):
        err, vals = oracle_regress(instance, wf, args.metric.upper())
        result = RegressionResult(vals, err, {"oracle": "enumeration"})
    else:
        if args.p is None or args.delta is None:
            raise InputError("oracle --metric lp needs --p and --delta")
        delta = _delta(args.delta)
        lo, hi = min(wf.values), max(wf.values)
        grid = [lo + i * delta for i in range(math.ceil((hi - lo) / delta) + 1)]
        err, vals = oracle_regress(instance, wf, Metric("Lp", p=args.p, delta=float(delta)), grid)
        result = RegressionResult(vals, err, {"oracle": "enumeration", "grid_size": len(grid)})
    return format_result(result, _metric_name(args), args.format)


def random_dag(n, m, seed):
    """Random dag: ``m`` distinct edges consistent with a random vertex order."""
    rng = random.Random(seed)
    m = min(m, n * (n - 1) // 2)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set()
    while len(edges) < m:
        a, b = rng.sample(range(n), 2)
        if a > b:
            a, b = b, a
        edges.add((perm[a], perm[b]))
    return Dag(n, sorted(edges)), rng


def cmd_bench(args):
    dag, rng = random_dag(args.n, args.edges, args.seed)
    wf = WeightedFunction([rng.randint(0, args.max_value) for _ in range(args.n)],
                          [rng.randint(0, args.max_value) for _ in range(args.n)])
    args.violator = "auto"
    start = time.perf_counter()
    result = _regress(dag, wf, "dag", args)
    result.diagnostics["seconds"] = round(time.perf_counter() - start, 3)
    result.diagnostics["n"] = args.n
    result.diagnostics["m"] = dag.m
    if args.format == "json":
        return format_result(result, _metric_name(args), "json")
    lines = [f"error {_metric_name(args)} {format_number(result.error)}"]
    lines.extend(f"# diag {k}={v}" for k, v in result.diagnostics.items())
    return "\n".join(lines) + "\n"


COMMANDS = {"regress": cmd_regress, "violator": cmd_violator, "oracle": cmd_oracle, "bench": cmd_bench}


def run(argv=None) -> int:
    """Run the CLI on ``argv``; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        text = COMMANDS[args.command](args)
    except TooLarge as exc:
        print(f"isoreg-error: too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (IsoregError, ValueError, OverflowError) as exc:
        print(f"isoreg-error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
