"""``polystab`` command line.

Exit codes: 0 success, 2 invalid input, 3 index on a regime boundary,
4 output could not be written.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from ..domain import InvalidConfigError, PolytropeConfig, boundary_name, nearest_boundary
from ..integrate import DEFAULT_XI_MAX, IntegrationError, integrate_physical
from . import formats
from .commands import REFERENCE_TABLE, RegimeInconsistency, analyze, cmd_phase, cmd_table

__all__ = ["main", "EXIT_OK", "EXIT_INVALID", "EXIT_BOUNDARY", "EXIT_IO"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BOUNDARY = 3
EXIT_IO = 4

logger = logging.getLogger("polystab")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polystab", description="Stability analyses of the Lane-Emden equation.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats_, index=True):
        if index:
            sp.add_argument("--n", type=float, required=True, help="polytropic index")
            sp.add_argument("--b", type=float, default=1.0, help="scale constant B of the w-transform")
        sp.add_argument("--format", choices=formats_, default="json")
        sp.add_argument("--output", metavar="PATH", help="write here instead of stdout")

    sp = sub.add_parser("analyze", help="classify every equilibrium with all three methods")
    common(sp, ("json", "csv", "text"))

    sp = sub.add_parser("table", help="rebuild the per-regime comparison table")
    sp.add_argument("--samples", type=int, default=1, help="indices sampled per regime")
    common(sp, ("json", "csv", "text"), index=False)

    sp = sub.add_parser("profile", help="integrate a Lane-Emden profile")
    sp.add_argument("--xi-max", type=float, default=DEFAULT_XI_MAX)
    sp.add_argument("--tol", type=float, default=1e-10)
    common(sp, ("json", "csv"))

    sp = sub.add_parser("phase", help="integrate phase trajectories around an equilibrium")
    sp.add_argument("--grid", type=int, default=8)
    sp.add_argument("--t-end", type=float, default=30.0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--radius", type=float, default=1e-2, help="half-width of the initial-condition lattice")
    common(sp, ("json", "csv"))
    return p


def _emit(text: str, path: Optional[str]) -> int:
    if path is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"polystab: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _invalid(msg: str) -> int:
    print(f"polystab: {msg}", file=sys.stderr)
    return EXIT_INVALID


def _run_analyze(args) -> int:
    config = PolytropeConfig(args.n, args.b)
    config.require_analysis_range()
    b = nearest_boundary(config.n)
    if b is not None:
        print(f"polystab: n = {args.n} lies on the regime boundary n = {boundary_name(b)}", file=sys.stderr)
        return EXIT_BOUNDARY
    reports = analyze(config)
    render = {"json": formats.analyze_json, "csv": formats.analyze_csv, "text": formats.analyze_text}[args.format]
    return _emit(render(config, reports), args.output)


def _run_table(args) -> int:
    if args.samples < 1:
        return _invalid("--samples must be at least 1")
    try:
        rows = cmd_table(args.samples)
    except RegimeInconsistency as exc:
        return _invalid(str(exc))
    if [r.words for r in rows] != list(REFERENCE_TABLE):
        logger.warning("computed table differs from the reference table")
    render = {"json": formats.table_json, "csv": formats.table_csv, "text": formats.table_text}[args.format]
    return _emit(render(rows, args.samples), args.output)


def _run_profile(args) -> int:
    config = PolytropeConfig(args.n, args.b)
    try:
        profile = integrate_physical(config, args.xi_max, args.tol)
    except ValueError as exc:
        return _invalid(str(exc))
    except IntegrationError as exc:
        logger.warning("%s; writing the partial profile", exc)
        profile = exc.partial
    render = formats.profile_json if args.format == "json" else formats.profile_csv
    return _emit(render(profile, args.tol, args.xi_max), args.output)


def _run_phase(args) -> int:
    if args.grid < 1:
        return _invalid("--grid must be at least 1")
    if not 1e-14 <= args.tol <= 1e-4:
        return _invalid("--tol must lie in [1e-14, 1e-4]")
    config = PolytropeConfig(args.n, args.b)
    portrait = cmd_phase(config, args.grid, args.t_end, args.tol, args.radius)
    for i, tr in enumerate(portrait.trajectories):
        if tr.partial:
            logger.warning("trajectory %d is partial: %s", i, tr.reason)
    render = formats.phase_json if args.format == "json" else formats.phase_csv
    return _emit(render(portrait, args.t_end, args.tol), args.output)


_RUNNERS = {"analyze": _run_analyze, "table": _run_table, "profile": _run_profile, "phase": _run_phase}


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="polystab: %(levelname)s: %(message)s")
    args = _parser().parse_args(argv)
    try:
        return _RUNNERS[args.command](args)
    except InvalidConfigError as exc:
        return _invalid(str(exc))
