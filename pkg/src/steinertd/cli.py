"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 timeout, 3 infeasible.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import decomposition as td_mod
from .instance import (InstanceError, StpParseError, generate_instance, parse_dimacs,
                       read_stp, write_stp)
from .reduction import ReductionPolicy
from .solver import DEFAULT_TIMEOUT, INFEASIBLE, TIMEOUT, compare, emit_report, solve

EXIT_OK, EXIT_USAGE, EXIT_TIMEOUT, EXIT_INFEASIBLE = 0, 1, 2, 3


def _exit_code(reports) -> int:
    statuses = {r.status for r in reports}
    if TIMEOUT in statuses:
        return EXIT_TIMEOUT
    if INFEASIBLE in statuses:
        return EXIT_INFEASIBLE
    if statuses - {"ok"}:
        return EXIT_USAGE
    return EXIT_OK


def _write(text: str, path) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _weight_range(text: str) -> tuple:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return lo, hi


def _report_args(p) -> None:
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT,
                   help="time budget per algorithm in seconds (default 3600)")
    p.add_argument("--report", choices=["csv", "json", "table"], default="table")
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall-clock fields for byte-stable output")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinertd",
        description="Exact Steiner tree via DP on tree decompositions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one STP instance")
    p.add_argument("file")
    p.add_argument("--algo", type=ReductionPolicy.parse, default=ReductionPolicy.RBC)
    _report_args(p)

    p = sub.add_parser("compare", help="run several algorithms on one decomposition")
    p.add_argument("file")
    p.add_argument("--algos", default="cdp,rba,rbc")
    _report_args(p)

    p = sub.add_parser("gen", help="make a Steiner instance from a DIMACS graph")
    p.add_argument("graph")
    p.add_argument("--weights", type=_weight_range, default=(1, 1000))
    p.add_argument("--terminals", type=float, default=0.2,
                   help="fraction of vertices made terminals")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")

    p = sub.add_parser("validate-td", help="check the heuristic and nice decompositions")
    p.add_argument("file")
    p.add_argument("--export", help="write the heuristic decomposition as .td text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (OSError, StpParseError, InstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    if args.command == "gen":
        graph = parse_dimacs(Path(args.graph).read_text())
        inst = generate_instance(graph, args.terminals, args.weights, args.seed,
                                 name=Path(args.graph).stem)
        _write(write_stp(inst), args.output)
        return EXIT_OK

    instance = read_stp(args.file)

    if args.command == "validate-td":
        td = td_mod.greedy_degree_decompose(instance)
        problems = td_mod.validate(td, instance)
        if instance.terminals_connected():
            work = instance.restrict_to_terminal_component()
            work_td = td if work is instance else td_mod.greedy_degree_decompose(work)
            nice = td_mod.make_nice(work_td, work)
            problems += [f"nice: {p}" for p in td_mod.validate_nice(nice, work)]
            if nice.width != work_td.width:
                problems.append(f"nice: width {nice.width} != {work_td.width}")
            print(f"nice nodes: {len(nice.nodes)}")
        print(f"width: {td.width}")
        for p in problems:
            print(p)
        print("valid" if not problems else f"{len(problems)} violation(s)")
        if args.export:
            Path(args.export).write_text(td.to_text(instance.vertex_count))
        return EXIT_OK if not problems else EXIT_USAGE

    if args.command == "solve":
        reports = [solve(instance, args.algo, args.timeout)]
    else:
        modes = [ReductionPolicy.parse(m) for m in args.algos.split(",") if m.strip()]
        reports = compare(instance, modes, args.timeout)
    _write(emit_report(reports, args.report, timing=not args.no_timing), args.output)
    return _exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
