"""Command line entry point.

    hderiv eval EXPR --at Q
    hderiv diff EXPR --at Q
    hderiv check EXPR --at Q[,Q...] [--step S] [--tol T] [--json]
    hderiv check --corpus FILE | --standing

Exit status: 0 all good, 1 a check failed (or a domain error), 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .check import cmd_check, load_corpus, report_document, run_corpus, standing_corpus
from .diffops import DiffConfig
from .expr import differentiate, evaluate, parse, parse_quaternion
from .quaternion import DomainError, format_quaternion
from .series import SeriesTruncation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _points(text: str):
    return [parse_quaternion(p) for p in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hderiv", description="H-derivatives of quaternion expressions.")
    parser.add_argument("--eps", type=float, default=1e-14, help="series tail bound (default 1e-14)")
    parser.add_argument("--nmax", type=int, default=200, help="series term cap (default 200)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("eval", "evaluate EXPR at a point"),
                            ("diff", "H-derivative of EXPR at a point")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("expr")
        p.add_argument("--at", required=True, help="point, e.g. 1-2i+0.5k")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("check", help="compare the H-derivative with a finite-difference partial")
    p.add_argument("expr", nargs="?")
    p.add_argument("--at", help="comma separated points")
    p.add_argument("--corpus", help="file of 'EXPR ; POINT' lines")
    p.add_argument("--standing", action="store_true", help="run the bundled regression corpus")
    p.add_argument("--step", type=float, default=1e-5)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")
    return parser


def _run_single(args, trunc: SeriesTruncation) -> int:
    point = parse_quaternion(args.at)
    expr = parse(args.expr)
    try:
        op = evaluate if args.command == "eval" else differentiate
        result = op(expr, point, trunc, source=args.expr)
    except (DomainError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        doc = {"expression": args.expr, "point": list(point.as_tuple()),
               "command": args.command, "value": list(result.as_tuple())}
        print(json.dumps(doc))
    else:
        print(format_quaternion(result))
    return EXIT_OK


def _run_check(args, parser, trunc: SeriesTruncation) -> int:
    if sum(bool(x) for x in (args.at, args.corpus, args.standing)) != 1:
        parser.error("check needs exactly one of --at, --corpus, --standing")
    if args.at is not None and args.expr is None:
        parser.error("check --at needs an expression")
    if args.at is None and args.expr is not None:
        parser.error("an expression is only used with --at")
    cfg = DiffConfig(step=args.step, tol=args.tol)
    if args.at is not None:
        label = args.expr
        reports = cmd_check(args.expr, _points(args.at), cfg, trunc)
    else:
        label = args.corpus if args.corpus else "standing corpus"
        entries = load_corpus(args.corpus) if args.corpus else standing_corpus()
        reports = run_corpus(entries, cfg, trunc)
    if args.json:
        print(json.dumps(report_document(label, reports), indent=2))
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status}  {r.expression}  at {format_quaternion(r.point)}"
            if r.error:
                line += f"  {r.error}"
            else:
                line += (f"  ad={format_quaternion(r.ad_derivative)}"
                         f"  fd={format_quaternion(r.fd_derivative)}  err={r.abs_error:.3g}")
            print(line)
        failed = sum(not r.passed for r in reports)
        print(f"{len(reports) - failed}/{len(reports)} passed")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        trunc = SeriesTruncation(eps=args.eps, n_max=args.nmax)
        if args.command == "check":
            return _run_check(args, parser, trunc)
        return _run_single(args, trunc)
    except (ValueError, OSError) as exc:
        # ParseError is a ValueError, as are bad eps/step/tol values and corpus lines
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
