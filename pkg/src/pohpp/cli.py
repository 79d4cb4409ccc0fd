"""Command-line front end.

Exit codes: 0 feasible (or success), 2 infeasible (or a rejected path),
1 error. In text mode the wall time goes to stderr so that stdout depends
only on the input and the flags.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BadParams, PohppError, SolutionRejected
from .formats import emit_instance, parse_instance, parse_matrix, parse_mcp, to_dot
from .generate import KINDS, generate
from .model import verify_solution
from .reductions import bipartite_pohpp_encode, matrix_to_poset, mcp_to_pohpp
from .solve import ALGORITHMS, DEFAULT_BUDGET, instance_stats, select_algorithm, solve
from .width_dp import tsppc_reduce

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _kv(items):
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise BadParams(f"generator parameters are key=value pairs, got {item!r}")
        params[key] = value
    return params


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.file))
    report = solve(inst, args.algo, args.budget, args.oracle_cap)
    if args.json:
        sys.stdout.write(json.dumps(report.to_json(), sort_keys=True) + "\n")
    else:
        sys.stdout.write(report.to_text())
        print(f"time {report.millis:.1f} ms", file=sys.stderr)
    if args.path_out and report.feasible:
        Path(args.path_out).write_text(" ".join(map(str, report.path)) + "\n")
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_info(args) -> int:
    inst = parse_instance(_read(args.file))
    if args.dot:
        sys.stdout.write(to_dot(inst))
        return EXIT_OK
    stats = instance_stats(inst)
    stats["weighted"] = inst.weighted
    stats["connected"] = inst.connected
    stats["order_pairs"] = inst.order.size
    try:
        strategy = select_algorithm(inst, args.budget, stats=stats)
        stats["strategy"] = strategy.algorithm
    except PohppError as exc:
        stats["strategy"] = f"none ({exc})"
    if args.json:
        sys.stdout.write(json.dumps(stats, sort_keys=True) + "\n")
    else:
        for key, value in stats.items():
            sys.stdout.write(f"{key} {str(value).lower() if isinstance(value, bool) else value}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.file))
    try:
        seq = [int(t) for t in args.path.replace(",", " ").split()]
    except ValueError:
        raise PohppError(f"path must be a list of integers, got {args.path!r}") from None
    try:
        checked = verify_solution(inst, seq)
    except SolutionRejected as exc:
        sys.stdout.write(f"rejected {type(exc).__name__}: {exc}\n")
        return EXIT_INFEASIBLE
    c = checked.cost
    sys.stdout.write(f"valid cost {c.numerator}" + (f"/{c.denominator}" if c.denominator != 1 else "") + "\n")
    return EXIT_OK


def cmd_gen(args) -> int:
    inst = generate(args.kind, _kv(args.params), args.seed)
    _write(args.output, emit_instance(inst))
    return EXIT_OK


def cmd_gadget(args) -> int:
    text = _read(args.file)
    if args.gadget == "mcp":
        inst = mcp_to_pohpp(parse_mcp(text))
    elif args.gadget == "tsppc":
        inst = tsppc_reduce(parse_instance(text), args.start)
    else:
        inst = bipartite_pohpp_encode(matrix_to_poset(parse_matrix(text)))
    _write(args.output, emit_instance(inst))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors exit with 1; 2 is reserved for infeasible instances
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pohpp", description="Partially ordered Hamiltonian path solver")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    p.add_argument("--algo", choices=ALGORITHMS, default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="state budget for the DPs")
    p.add_argument("--oracle-cap", type=int, default=16, help="largest n the exhaustive oracle accepts")
    p.add_argument("--path-out", help="write the optimal vertex sequence here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("info", help="structural statistics of an instance")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="print the graph in Graphviz format")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("verify", help="check a vertex sequence against an instance")
    p.add_argument("file")
    p.add_argument("--path", required=True, help='vertex sequence, e.g. "0 2 1 3"')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("params", nargs="*", help="generator parameters as key=value")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("gadget", help="build reduction instances")
    gsub = p.add_subparsers(dest="gadget", required=True)
    g = gsub.add_parser("mcp", help="multicolored clique gadget from a 'p mcp' file")
    g.add_argument("file")
    g.add_argument("-o", "--output")
    g = gsub.add_parser("tsppc", help="tour-with-precedence reduction of an instance file")
    g.add_argument("file")
    g.add_argument("--start", type=int, required=True)
    g.add_argument("-o", "--output")
    g = gsub.add_parser("bipartite", help="K_{n,n} encoding of a 'p matrix' file")
    g.add_argument("file")
    g.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gadget)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PohppError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
