"""Command-line entrypoint: ``weylcheck info|verify|series TYPE RANK``."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import __version__
from .config import FORMATS, RunConfig, load_config
from .errors import BudgetExceeded, IncompleteTable, WeylcheckError
from .render import Spinner, dumps, error, format_text, highlight, status
from .suites import SERIES_KINDS, SUITES, run

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("type", help="Weyl group type: A, B, C, D, E, F or G")
    parser.add_argument("rank", type=int)
    parser.add_argument("--m", type=int, default=None, help="parameter c = (1 + m h)/h (default 1)")
    parser.add_argument("--c", default=None, metavar="NUM/DEN[,NUM/DEN]", help="extra parameter value to report on")
    parser.add_argument("--max-bidegree", type=int, nargs=2, default=None, metavar=("A", "B"))
    parser.add_argument("--budget", type=int, default=None, help="largest Weyl group to enumerate")
    parser.add_argument("--degree-cap", type=int, default=None)
    parser.add_argument("--trunc", type=int, default=None, help="series truncation order")
    parser.add_argument("--samples", type=int, default=None, help="random polynomials per parameter value")
    parser.add_argument("--allow-large", action="store_true", default=None, help="run opt-in large cases")
    parser.add_argument("--format", choices=FORMATS, default=None)
    parser.add_argument("--out", default=None, metavar="PATH", help="also write the JSON report here")
    parser.add_argument("--verbose", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylcheck",
        description="Exact checks of Cherednik-algebra and diagonal-coinvariant identities for Weyl groups.",
    )
    parser.add_argument("--version", action="version", version=f"weylcheck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("info", help="root data of a Weyl group"))
    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("what", choices=SUITES + ("all",))
    _common(verify)
    series = sub.add_parser("series", help="emit a series or table")
    series.add_argument("what", choices=SERIES_KINDS)
    _common(series)
    return parser


def config_from_args(args: argparse.Namespace, cfg: Optional[dict] = None) -> RunConfig:
    cfg = load_config() if cfg is None else cfg
    return RunConfig.from_config(
        cfg,
        command=args.command,
        type_label=args.type.upper(),
        rank=args.rank,
        what=getattr(args, "what", None),
        m=args.m,
        c=args.c,
        bidegree_bound=tuple(args.max_bidegree) if args.max_bidegree else None,
        group_budget=args.budget,
        degree_cap=args.degree_cap,
        trunc=args.trunc,
        dunkl_samples=args.samples,
        allow_large=args.allow_large,
        format=args.format,
        out=args.out,
        verbose=args.verbose,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        run_config = config_from_args(args)
        with Spinner(f"{args.command} {run_config.type_label}{run_config.rank}"):
            report = run(run_config)
    except (BudgetExceeded, IncompleteTable) as exc:
        error(str(exc))
        return EXIT_BUDGET
    except (WeylcheckError, ValueError) as exc:
        error(str(exc))
        return EXIT_USAGE

    payload = report.to_dict()
    if run_config.format == "text":
        print(format_text(payload, color=sys.stdout.isatty()))
    else:
        print(highlight(dumps(payload)))
    if run_config.out:
        report.save(run_config.out)
        status(f"report written to {run_config.out}", run_config.verbose)
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
