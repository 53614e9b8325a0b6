"""Command line front end: ``polphase verify|dist|compare|dump-op``.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or I/O.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass

import numpy as np

from . import io as table_io
from .distribution import (
    DistributionComponents,
    ExponentConvention,
    PhaseGrid,
    StateSpec,
    grid_sample,
    matched_terms,
)
from .operators import OPERATORS, build_operator
from .space import TruncationWindow, make_window
from .states import Normalization
from .verify import REPORT_COLUMNS, format_report, report_rows, run_checks

log = logging.getLogger("polphase")

COMMANDS = ("verify", "dist", "compare", "dump-op")
# normalization used when --normalize is not given
DEFAULT_NORMALIZATION = {"verify": "unit", "dist": "raw", "compare": "raw", "dump-op": "raw"}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    window: TruncationWindow
    spec: StateSpec
    resolution: int
    method: str
    convention: ExponentConvention
    normalization: Normalization
    n_terms: int | None
    out: str | None
    fmt: str
    op: str | None
    jobs: int


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nmin", type=int, default=-32, help="lowest label of the window (<= -1)")
    common.add_argument("--nmax", type=int, default=31, help="highest label of the window (>= 0)")
    common.add_argument("--state", default="coherent", help="coherent | squeezed | thermal")
    common.add_argument("--alpha-re", type=float, default=1.0)
    common.add_argument("--alpha-im", type=float, default=0.0)
    common.add_argument("--r", type=float, default=1.0, help="squeeze magnitude")
    common.add_argument("--theta", type=float, default=0.0, help="squeeze angle (radians)")
    common.add_argument("--nbar", type=float, default=1.0, help="thermal mean photon number")
    common.add_argument("--resolution", type=int, default=361, help="phase grid points on [-pi, pi]")
    common.add_argument("--method", choices=("series", "oracle"), default="series")
    common.add_argument("--convention", choices=("literal", "derived"), default="derived",
                        help="interference exponent n+m (literal) or n+m+1 (derived)")
    common.add_argument("--normalize", choices=("raw", "unit"), default=None)
    common.add_argument("--n-terms", type=int, default=None,
                        help="series length per index (default 40; compare matches the window)")
    common.add_argument("--jobs", type=int, default=1, help="threads for grid sampling")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--op", default=None, help=f"operator for dump-op: {', '.join(OPERATORS)}")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="polphase",
        description="Polarization phase operator on a truncated two-sided Fock space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the invariant checks")
    sub.add_parser("dist", parents=[common], help="write a phase-distribution table")
    sub.add_parser("compare", parents=[common], help="series vs oracle side by side")
    sub.add_parser("dump-op", parents=[common], help="write an operator's nonzero entries")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    try:
        window = make_window(args.nmin, args.nmax)
        spec = StateSpec(args.state, complex(args.alpha_re, args.alpha_im), args.r, args.theta, args.nbar)
        spec.squeeze, spec.thermal  # parameter validation
        grid = PhaseGrid(args.resolution)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n_terms is not None and args.n_terms < 1:
        raise UsageError("--n-terms must be >= 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if args.command == "dump-op" and args.op is None:
        raise UsageError("dump-op needs --op NAME")
    if args.op is not None and args.op not in OPERATORS:
        raise UsageError(f"unknown operator {args.op!r}; choose from {', '.join(OPERATORS)}")
    return RunConfig(
        command=args.command,
        window=window,
        spec=spec,
        resolution=grid.resolution,
        method=args.method,
        convention=ExponentConvention(args.convention),
        normalization=Normalization(args.normalize or DEFAULT_NORMALIZATION[args.command]),
        n_terms=args.n_terms,
        out=args.out,
        fmt=args.fmt,
        op=args.op,
        jobs=args.jobs,
    )


def _emit(text: str, cfg: RunConfig):
    try:
        table_io.write_text(text, cfg.out, sys.stdout)
    except OSError as exc:
        raise UsageError(f"cannot write {cfg.out}: {exc.strerror or exc}") from None


def _series_terms(cfg: RunConfig):
    if cfg.n_terms is not None:
        return cfg.n_terms
    return None if cfg.spec.kind == "thermal" else 40


def cmd_verify(cfg: RunConfig) -> int:
    checks = run_checks(cfg.window, cfg.normalization, cfg.resolution)
    sys.stdout.write(format_report(checks))
    if cfg.out is not None:
        _emit(table_io.render(REPORT_COLUMNS, report_rows(checks), cfg.fmt), cfg)
    return 0 if all(c.passed for c in checks) else 1


def cmd_dist(cfg: RunConfig) -> int:
    dist = grid_sample(
        cfg.spec,
        PhaseGrid(cfg.resolution),
        cfg.method,
        cfg.convention,
        window=cfg.window,
        norm=cfg.normalization,
        n_terms=_series_terms(cfg),
        n_jobs=cfg.jobs,
    )
    _emit(table_io.render_distribution(dist, cfg.fmt), cfg)
    return 0


def compare_tables(cfg: RunConfig):
    """Series (window-matched unless --n-terms is set) against the oracle."""
    grid = PhaseGrid(cfg.resolution)
    terms = cfg.n_terms if cfg.n_terms is not None else matched_terms(cfg.window)
    series = grid_sample(cfg.spec, grid, "series", cfg.convention, norm=cfg.normalization,
                         n_terms=terms, n_jobs=cfg.jobs)
    oracle = grid_sample(cfg.spec, grid, "oracle", window=cfg.window, norm=cfg.normalization,
                         n_jobs=cfg.jobs)
    header = ["phi"]
    cols = [grid.points]
    maxdev = {}
    for c in DistributionComponents._fields:
        a, b = getattr(series, c), getattr(oracle, c)
        header += [f"{c}_series", f"{c}_oracle", f"{c}_delta"]
        cols += [a, b, a - b]
        maxdev[c] = float(np.max(np.abs(a - b)))
    rows = np.column_stack(cols).tolist()
    return header, rows, maxdev


def cmd_compare(cfg: RunConfig) -> int:
    header, rows, maxdev = compare_tables(cfg)
    _emit(table_io.render(header, rows, cfg.fmt), cfg)
    summary = "max|delta| " + " ".join(f"{k}={v:.3e}" for k, v in maxdev.items())
    print(summary, file=sys.stderr if cfg.out is None else sys.stdout)
    return 0


def cmd_dump_op(cfg: RunConfig) -> int:
    op = build_operator(cfg.op, cfg.window)
    _emit(table_io.render_operator(op, cfg.fmt), cfg)
    return 0


HANDLERS = {"verify": cmd_verify, "dist": cmd_dist, "compare": cmd_compare, "dump-op": cmd_dump_op}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = make_config(args)
        log.debug("config %s", cfg)
        return HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"polphase {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
