"""Command line: ``transitloc solve instance.json [--oracle] [--svg out.svg]``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .captation import captation_partition
from .config import TOL
from .errors import TransitLocError, ValidationError
from .model import validate_instance
from .oracle import DEFAULT_ANGLE_N, DEFAULT_GRID_N, brute_force
from .report import build_report
from .solver import solve
from .svg import emit_svg

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_DISAGREE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transitloc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", help="solve an instance file and print a report")
    p.add_argument("instance", help="JSON file with fields points, length, k")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle and report agreement")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID_N, help="oracle lattice size per axis")
    p.add_argument("--angles", type=int, default=DEFAULT_ANGLE_N, help="oracle angle count")
    p.add_argument("--svg", metavar="PATH", help="write a figure of the solution")
    p.add_argument("--tol", type=float, default=TOL, help="absolute tolerance (default %(default)g)")
    p.add_argument("--workers", type=int, default=None, help="solver processes")
    p.add_argument("--pretty", action="store_true", help="indent the JSON report")
    return parser


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None
    return validate_instance(raw)


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        instance = _load(args.instance)
        if not args.tol > 0:
            raise ValidationError(f"tol must be positive, got {args.tol}")
        solution = solve(instance, tol=args.tol, workers=args.workers)
        oracle = brute_force(instance, args.grid, args.angles) if args.oracle else None
    except ValidationError as exc:
        print(f"error: {exc.field}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TransitLocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    report = build_report(instance, solution, oracle)
    print(report.to_json(pretty=args.pretty))
    if args.svg:
        try:
            emit_svg(instance, solution, captation_partition(instance, solution.segment, args.tol), args.svg)
        except OSError as exc:
            print(f"error: cannot write {args.svg}: {exc.strerror}", file=sys.stderr)
            return EXIT_INVALID
    if report.oracle is not None and not report.oracle.agreement:
        print("error: oracle disagrees with the solver beyond its error bound", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def main() -> None:
    sys.exit(run())
