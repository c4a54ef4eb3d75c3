"""Command-line renderer: ``render <figure_id> <csv> [-o out.svg] [--png] [--loglog]``."""

from __future__ import annotations

import argparse
import sys

from .render import render
from .schema import SchemaError, normalize_figure_id

__all__ = ["main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render a bcce experiment CSV into its publication figure.",
    )
    parser.add_argument("figure_id", help="fig2..fig7 or a pipeline name like OutageVsN")
    parser.add_argument("csv", help="experiment CSV produced by the bcce CLI")
    parser.add_argument("-o", "--out", help="output path (default: <figure_id>.svg or .png)")
    parser.add_argument("--png", action="store_true", help="write PNG instead of SVG")
    parser.add_argument("--loglog", action="store_true", help="log-log axes where supported")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        figure = normalize_figure_id(args.figure_id)
        out = args.out or f"{figure}.{'png' if args.png else 'svg'}"
        path = render(figure, args.csv, out, png=args.png, loglog=args.loglog)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
