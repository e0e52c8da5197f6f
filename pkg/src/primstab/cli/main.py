#!/usr/bin/env python3
from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from primstab import __version__
from primstab.cli import commands
from primstab.core import registry
from primstab.core.config import settings
from primstab.core.errors import ElementaryRepresentation, InvalidGeometry, PrimstabError
from primstab.core.logging import configure_logging

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_ELEMENTARY = 3
EXIT_IO = 4
EXIT_GEOMETRY = 5


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, help="Depth budget for the BQ search.")
    common.add_argument("--m", type=float, help="Threshold m of the attracting subtree (≥ 2).")
    common.add_argument("--level", type=int, help="Word level |p| + q for listings and reports.")
    common.add_argument("--tol", type=float, help="Interval and intersection tolerance.")
    common.add_argument("--threads", type=int, help="Worker processes for scans.")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", help="Write output here instead of stdout.")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primstab",
        description="BQ, primitive stability and bounded intersections for SL(2,C) characters of F2.",
    )
    parser.add_argument("--version", action="version", version=f"primstab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    p = sub.add_parser("classify", parents=[common], help="BQ, PS and BIP verdicts for one triple.")
    p.add_argument("triple", help='Trace triple "x,y,z"; i or j for the imaginary unit.')
    p.set_defaults(func=commands.cmd_classify)

    p = sub.add_parser("words", parents=[common], help="Farey words up to a level.")
    p.add_argument("--negative", action="store_true", help="Include negative fractions.")
    p.set_defaults(func=commands.cmd_words)

    p = sub.add_parser("tree", parents=[common], help="Dump the trace tree around the central vertex.")
    p.add_argument("triple")
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(func=commands.cmd_tree)

    p = sub.add_parser("scan", parents=[common], help="Render a parameter-plane slice.")
    families = registry.describe()
    p.add_argument(
        "--family",
        choices=list(families),
        default="diagonal",
        help="; ".join(f"{name}: {summary}" for name, summary in families.items()),
    )
    p.add_argument("--window", default="-3,-3,3,3", help="re0,im0,re1,im1")
    p.add_argument("--size", default="64x64", help="WIDTHxHEIGHT")
    p.add_argument("--image", choices=["pgm", "ppm"])
    p.add_argument("--x0", help="Fixed x for --family fixed-xy.")
    p.add_argument("--y0", help="Fixed y for --family fixed-xy.")
    p.add_argument("--affine", help="ax,bx,ay,by,az,bz for --family custom.")
    p.set_defaults(func=commands.cmd_scan)

    p = sub.add_parser("report", parents=[common], help="Growth, PS and BIP report for one triple.")
    p.add_argument("triple")
    p.set_defaults(func=commands.cmd_report)
    return parser


def run(func: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    """Map expected failures to exit codes; tracebacks only for real bugs."""
    try:
        return func(args)
    except ElementaryRepresentation as exc:
        print(f"primstab: elementary representation: {exc}", file=sys.stderr)
        return EXIT_ELEMENTARY
    except InvalidGeometry as exc:
        print(f"primstab: invalid geometry: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except PrimstabError as exc:
        print(f"primstab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"primstab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError) as exc:
        print(f"primstab: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(settings.app.log_level, settings.app.log_format)
    return run(args.func, args)


if __name__ == "__main__":
    raise SystemExit(main())
