"""Command-line driver.

Exit codes: 0 success, 1 verification failure, 2 configuration or usage error.

    rrdirac dim -c cfg.json
    rrdirac verify -c cfg.json -o report.json
    rrdirac sample -c cfg.json --field chi -o grid.csv
    rrdirac contour -c cfg.json --cx 0 --cy 0 --r 1
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

import numpy as np
from pydantic import ValidationError

from . import __version__
from .checks import analytic_dimension, rank_dimension, run_verification
from .config import RunConfig
from .errors import ContourError
from .gauge import Circle, contour_flux, enclosed_quanta
from .grid import sample, write_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load(path: str) -> RunConfig:
    try:
        return RunConfig.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from exc
    except ValidationError as exc:
        raise UsageError(f"invalid config {path}:\n{exc}") from exc


def _fmt(z: complex) -> str:
    # + 0.0 turns a rounded -0.0 into 0.0
    re, im = round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0
    return f"{re:.6f}{im:+.6f}i"


def cmd_dim(args) -> int:
    run = _load(args.config)
    cfg = run.flux_config()
    analytic = analytic_dimension(cfg)
    verified = rank_dimension(cfg, np.random.default_rng(run.seed), run.tolerances.rank_rel)
    print(f"analytic={analytic} verified={verified}")
    return EXIT_OK if analytic == verified else EXIT_FAIL


def cmd_verify(args) -> int:
    run = _load(args.config)
    report = run_verification(run)
    text = report.to_json()
    if args.output == "-":
        print(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    for c in report.failures():
        print(f"FAIL {c.name}: expected={c.expected} observed={c.observed} tol={c.tolerance}", file=sys.stderr)
    n = len(report.checks)
    print(f"{n - len(report.failures())}/{n} checks passed (degree {report.degree})", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sample(args) -> int:
    run = _load(args.config)
    try:
        nodes, values, is_complex = sample(run.flux_config(), run.grid, args.field)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    if args.output == "-":
        write_csv(sys.stdout, nodes, values, is_complex)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_csv(fh, nodes, values, is_complex)
    return EXIT_OK


def cmd_contour(args) -> int:
    run = _load(args.config)
    cfg = run.flux_config()
    try:
        loop = Circle(complex(args.cx, args.cy), args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        observed = contour_flux(cfg, loop)
    except ContourError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    expected = 2j * math.pi * enclosed_quanta(cfg, loop)
    err = abs(observed - expected)
    print(f"observed={_fmt(observed)} expected={_fmt(expected)} error={err:.3e}")
    return EXIT_OK if err <= run.tolerances.contour else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rrdirac", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dim", help="dimension of L(D): analytic count vs numerical rank")
    p.add_argument("-c", "--config", required=True)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("verify", help="run all checks and write a JSON report")
    p.add_argument("-c", "--config", required=True)
    p.add_argument("-o", "--output", default="-", help="report path ('-' for stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="sample a field on the config grid as CSV")
    p.add_argument("-c", "--config", required=True)
    p.add_argument("--field", required=True, help="phi, F, chi, u0, u1, ...")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("contour", help="loop integral of F around a circle")
    p.add_argument("-c", "--config", required=True)
    p.add_argument("--cx", type=float, default=0.0)
    p.add_argument("--cy", type=float, default=0.0)
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(func=cmd_contour)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
