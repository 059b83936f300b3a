"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 input error, 3 partial result.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .generators import gen_coloring_gadget, gen_gh_graph, gen_random_graph, gen_sc_counterexample
from .graph import GraphFormatError, parse_gr, write_gr
from .mis import max_independent_set
from .pipeline import (SOLVERS, InvalidDecomposition, cptw_report, decomposition_from_report,
                       dump_report, load_report, solve_bag, solve_decomposition, summary_csv,
                       summary_row)
from .treedecomp import DecompositionFormatError, min_fill_in_td, parse_td, write_td

log = logging.getLogger("cptw")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_PARTIAL = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _graph_name(path: str) -> str:
    return "stdin" if path == "-" else Path(path).stem


def _load_graph(path: str):
    return parse_gr(_read(path))


def _load_td(path: str | None, g, seed: int = 0):
    if path is None:
        return min_fill_in_td(g, seed), "min-fill-in"
    return parse_td(_read(path), n=g.n), Path(path).name


def cmd_td(args) -> int:
    g = _load_graph(args.graph)
    _write(args.output, write_td(min_fill_in_td(g, args.seed), g.n))
    return EXIT_OK


def cmd_partition(args) -> int:
    g = _load_graph(args.graph)
    deadline = None if args.bag_limit is None else time.monotonic() + args.bag_limit
    part, status, _, _ = solve_bag(g, args.solver, deadline, bounds=args.bounds)
    print(f"product {part.product_weight}")
    print(f"log2 {part.log_weight:.6f}")
    print(f"status {status}")
    for c in part.classes:
        print(" ".join(str(v + 1) for v in c))
    return EXIT_PARTIAL if status.startswith("timeout") else EXIT_OK


def _run_cptw(graph_path, td_path, solver, bag_limit, total_limit, sufficient, bounds, seed, timing):
    g = _load_graph(graph_path)
    td, source = _load_td(td_path, g, seed)
    result = solve_decomposition(g, td, solver, bag_limit, total_limit, sufficient, bounds, timing=timing)
    return cptw_report(result, g, _graph_name(graph_path), source)


def cmd_cptw(args) -> int:
    report = _run_cptw(args.graph, args.td, args.solver, args.bag_limit, args.total_limit,
                       not args.no_sufficient_weight, args.bounds, args.seed, not args.no_timing)
    _write(args.output, dump_report(report))
    if args.csv:
        Path(args.csv).write_text(summary_csv([summary_row(report)]))
    if args.output not in (None, "-"):
        print(f"cp_width_log2 {report['cp_width_log2']:.6f}  width {report['decomposition']['width']}")
    return EXIT_PARTIAL if report["partial"] else EXIT_OK


def cmd_gen(args) -> int:
    td = None
    if args.family == "gh":
        g, td = gen_gh_graph(args.h)
    elif args.family == "sc-counter":
        g = gen_sc_counterexample(args.k, "weighted" if args.weighted else "unweighted")
    elif args.family == "coloring-gadget":
        if not args.graph:
            raise InputError("coloring-gadget needs --graph")
        g, target = gen_coloring_gadget(_load_graph(args.graph))
        log.info("target weight %d", target)
    else:
        g = gen_random_graph(args.n, args.p, args.seed)
    _write(args.output, write_gr(g))
    if args.td_output:
        if td is None:
            td = min_fill_in_td(g, args.seed)
        Path(args.td_output).write_text(write_td(td, g.n))
    return EXIT_OK


def cmd_mis(args) -> int:
    g = _load_graph(args.graph)
    pd = decomposition_from_report(load_report(_read(args.report)))
    problems = pd.violations(g)
    if problems:
        raise InputError("report does not match graph: " + "; ".join(map(str, problems[:5])))
    mis = max_independent_set(g, pd)
    print(f"size {len(mis)}")
    print(" ".join(str(v + 1) for v in sorted(mis)))
    return EXIT_OK


def _bench_one(job):
    path, solver, bag_limit, total_limit, bounds = job
    td_path = path.with_suffix(".td")
    report = _run_cptw(str(path), str(td_path) if td_path.exists() else None, solver,
                       bag_limit, total_limit, True, bounds, 0, True)
    return summary_row(report)


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise InputError(f"{corpus} is not a directory")
    solvers = [s for s in args.solvers.split(",") if s]
    bad = [s for s in solvers if s not in SOLVERS]
    if bad:
        raise InputError(f"unknown solvers {bad}")
    graphs = sorted(corpus.glob("*.gr"))
    jobs = [(p, s, args.bag_limit, args.total_limit, args.bounds) for p in graphs for s in solvers]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    _write(args.output, summary_csv(rows))
    return EXIT_PARTIAL if any(r["partial"] for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cptw", description="Upper bounds on clique-partitioned treewidth.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("td", help="min-fill-in tree decomposition")
    s.add_argument("--graph", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_td)

    s = sub.add_parser("partition", help="weighted clique partition of a whole graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--solver", choices=SOLVERS, default="bb")
    s.add_argument("--bag-limit", type=float, default=180.0)
    s.add_argument("--bounds", choices=("none", "s", "sv"), default="sv")
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("cptw", help="full pipeline; writes a JSON report")
    s.add_argument("--graph", required=True)
    s.add_argument("--td", help="PACE .td file; default: min-fill-in")
    s.add_argument("--solver", choices=SOLVERS, default="bb")
    s.add_argument("--bag-limit", type=float, default=180.0)
    s.add_argument("--total-limit", type=float, default=300.0)
    s.add_argument("--no-sufficient-weight", action="store_true")
    s.add_argument("--bounds", choices=("none", "s", "sv"), default="sv")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--no-timing", action="store_true", help="record all times as 0")
    s.add_argument("--csv", help="also write a one-row CSV summary here")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cptw)

    s = sub.add_parser("gen", help="write a fixture graph in .gr format")
    s.add_argument("family", choices=("gh", "sc-counter", "coloring-gadget", "random"))
    s.add_argument("--h", type=int, default=3)
    s.add_argument("--k", type=int, default=10)
    s.add_argument("--weighted", action="store_true")
    s.add_argument("--graph", help="input graph for coloring-gadget")
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--td-output", help="also write a decomposition (gh: its path decomposition)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("mis", help="maximum independent set from a cptw report")
    s.add_argument("--graph", required=True)
    s.add_argument("--report", required=True)
    s.set_defaults(func=cmd_mis)

    s = sub.add_parser("bench", help="run solvers over a directory of .gr files")
    s.add_argument("--corpus", required=True)
    s.add_argument("--solvers", default="mc,rmc,sc,bb")
    s.add_argument("--bag-limit", type=float, default=180.0)
    s.add_argument("--total-limit", type=float, default=300.0)
    s.add_argument("--bounds", choices=("none", "s", "sv"), default="sv")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InputError, GraphFormatError, DecompositionFormatError, InvalidDecomposition,
            ValueError, KeyError) as exc:
        print(f"cptw: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
