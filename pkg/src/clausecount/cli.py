"""Command-line interface: ``clausecount count|check|stats|gen``.

Exit codes: 0 success, 1 input or validation error, 2 internal assertion,
3 counter/oracle mismatch (``check`` only).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .analysis import StatsSink, TreeStats, stats_report
from .formula import Formula, FormulaError, parse_dimacs, serialize_dimacs
from .generate import MAX_SEED, GenerationError, random_kcnf
from .graph import build_graph
from .mc2 import count_mc2
from .mc3 import count_mc3
from .propagation import DEFAULT_ORACLE_CAP, OracleCapExceeded, oracle_count

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3

COUNTERS = {"mc2": count_mc2, "mc3": count_mc3}


def resolve_algorithm(f: Formula, alg: str) -> str:
    if alg == "auto":
        return "mc2" if f.width <= 2 else "mc3"
    return alg


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clausecount", description="Exact model counting for 2-CNF and 3-CNF.")
    p.add_argument("command", choices=["count", "check", "stats", "gen"])
    p.add_argument("input", nargs="?", default="-", help="DIMACS file, or - for stdin (default)")
    p.add_argument("--alg", choices=["mc2", "mc3", "oracle", "auto"], default="auto")
    p.add_argument("--seed", type=_seed, default=0, help="generator seed (gen)")
    p.add_argument("--k", type=int, choices=[2, 3], default=3, help="clause width (gen)")
    p.add_argument("--n", type=int, default=None, help="number of variables (gen)")
    p.add_argument("--m", type=int, default=None, help="number of clauses (gen)")
    p.add_argument("--json", action="store_true", help="also print run statistics as JSON")
    p.add_argument("--trace", action="store_true", help="include the per-node trace in JSON statistics")
    p.add_argument("--dot", action="store_true", help="write the constraint graph in DOT format to stderr")
    p.add_argument("--parallel", action="store_true", help="evaluate top branches on worker threads")
    p.add_argument("--five-vertex-disabled", action="store_true", help="never apply the five-vertex split")
    return p


def _read_formula(path: str) -> Formula:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        f = parse_dimacs(text)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return f


def _run(f: Formula, alg: str, args, want_stats: bool) -> tuple[int, TreeStats | None]:
    if alg == "oracle":
        return oracle_count(f), None
    k = 2 if alg == "mc2" else 3
    if any(len(c) < k for c in f.clauses):
        print(f"warning: input has clauses shorter than {k}", file=sys.stderr)
    sink = StatsSink(trace=args.trace) if want_stats else None
    count = COUNTERS[alg](
        f, five_vertex=not args.five_vertex_disabled, sink=sink, parallel=args.parallel
    )
    return count, sink.stats if sink else None


def cmd_count(f: Formula, args, stats_only: bool = False) -> int:
    alg = resolve_algorithm(f, args.alg)
    want_stats = stats_only or args.json or args.trace
    if want_stats and alg == "oracle":
        print("error: statistics need --alg mc2, mc3 or auto", file=sys.stderr)
        return EXIT_INPUT
    count, stats = _run(f, alg, args, want_stats)
    if not stats_only:
        print(count)
    if want_stats:
        print(json.dumps(stats_report(f, alg, count, stats)))
    return EXIT_OK


def cmd_check(f: Formula, args) -> int:
    alg = resolve_algorithm(f, args.alg)
    expected = oracle_count(f, DEFAULT_ORACLE_CAP)
    count, _ = _run(f, alg, args, False)
    print(f"{alg}: {count}")
    print(f"oracle: {expected}")
    if count != expected:
        print("error: counts differ", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.n is None or args.m is None:
        print("error: gen needs --n and --m", file=sys.stderr)
        return EXIT_INPUT
    f = random_kcnf(args.k, args.n, args.m, args.seed)
    sys.stdout.write(serialize_dimacs(f))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        f = _read_formula(args.input)
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 20 * len(f.variables) + 1000))
        if args.dot:
            sys.stderr.write(build_graph(f).to_dot())
        if args.command == "check":
            return cmd_check(f, args)
        return cmd_count(f, args, stats_only=args.command == "stats")
    except (FormulaError, GenerationError, OracleCapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, RecursionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
