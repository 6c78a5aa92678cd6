"""Command-line interface.

Exit codes (stable):
    0  success (``identify`` also returns 0 for an unidentified knot, with a
       warning on stderr)
    2  usage error
    3  mosaic or report file could not be parsed
    4  mosaic is not a valid single-component knot mosaic
    5  resource limit exceeded (too many crossings)
    6  missing input file or knot table
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import RENDER_FORMATS, comparison_text, render, theorem_tables, write_catalog
from .enumeration import EnumerationReport, default_workers, run_full_enumeration
from .invariants import CrossingLimitError
from .knotdb import TABLE_ENV, TableError, identify_detailed, load_table
from .masks import MASK_IDS
from .mosaic import Mosaic, MosaicError, crossing_count, is_suitably_connected, read_mosaic, tile_number
from .trace import TraceError, components, to_diagram, writhe

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INVALID = 4
EXIT_LIMIT = 5
EXIT_MISSING = 6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def parse_crossings(text: str) -> tuple[int, int]:
    """``a..b`` (inclusive) or a single number."""
    try:
        if ".." in text:
            lo, hi = (int(v) for v in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"crossing range must look like 8..9, got {text!r}") from None
    if not 3 <= lo <= hi <= 13:
        raise argparse.ArgumentTypeError(f"crossing range {lo}..{hi} must lie within 3..13")
    return lo, hi


def parse_masks(text: str) -> list[str]:
    masks = [k.strip() for k in text.split(",") if k.strip()]
    bad = [k for k in masks if k not in MASK_IDS]
    if bad or not masks:
        raise argparse.ArgumentTypeError(f"unknown mask id(s) {bad}; choose from {','.join(MASK_IDS)}")
    return masks


def _load_mosaic(path: str) -> Mosaic:
    try:
        return read_mosaic(path)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}", EXIT_MISSING) from None
    except MosaicError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _load_report(path: str) -> EnumerationReport:
    try:
        return EnumerationReport.load(path)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}", EXIT_MISSING) from None
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{path}: not an enumeration report ({exc})", EXIT_PARSE) from None


def _load_index(table: str | None):
    try:
        return load_table(table)
    except FileNotFoundError as exc:
        raise CliError(str(exc), EXIT_MISSING) from None
    except TableError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def _knot_mosaic(path: str) -> Mosaic:
    m = _load_mosaic(path)
    if not is_suitably_connected(m):
        raise CliError(f"{path}: not suitably connected", EXIT_INVALID)
    if not m.is_determinate():
        raise CliError(f"{path}: contains undecided tiles (codes 11, 12)", EXIT_INVALID)
    k = components(m)
    if k != 1:
        raise CliError(f"{path}: {k} components, a knot has one", EXIT_INVALID)
    return m


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------


def cmd_validate(args) -> int:
    m = _load_mosaic(args.mosaic)
    if not is_suitably_connected(m):
        print(f"not suitably connected, tiles={tile_number(m)}")
        return EXIT_INVALID
    k = components(m, allow_crossing_any=True)
    print(f"connected, tiles={tile_number(m)}, components={k}, crossings={crossing_count(m)}, size={m.n}")
    return EXIT_OK


def cmd_trace(args) -> int:
    d = to_diagram(_knot_mosaic(args.mosaic))
    print(d.pd_text())
    print(f"crossings={d.n_crossings} writhe={writhe(d)}")
    return EXIT_OK


def cmd_identify(args) -> int:
    m = _knot_mosaic(args.mosaic)
    index = _load_index(args.table)
    res = identify_detailed(to_diagram(m), index)
    if res.composite:
        print(f"composite: {res.label()}")
    else:
        print(res.label())
    print(res.fingerprint.text())
    if not res.identified:
        print("warning: fingerprint not in the knot table", file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    index = _load_index(args.table)
    workers = args.workers if args.workers else default_workers()

    def progress(cell):
        if not args.quiet:
            found = len(cell.names)
            print(
                f"layout {cell.mask_id} c={cell.c}: {cell.placements} placements, "
                f"{cell.assignments} assignments, {found} names",
                file=sys.stderr,
            )

    report = run_full_enumeration(
        masks=args.masks,
        crossings=args.crossings,
        index=index,
        workers=workers,
        prune=False if args.no_prune else None,
        progress=progress,
    )
    report.save(args.out)
    print(f"wrote {args.out}: {len(report.cells)} cells, {len(report.knots)} knots")
    return EXIT_OK


def cmd_tables(args) -> int:
    report = _load_report(args.report)
    index = _load_index(args.table) if args.corollary else None
    cmp = theorem_tables(report, index, min_crossing_number=args.min_crossing_number)
    _write(comparison_text(cmp), args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    report = _load_report(args.report)
    paths = write_catalog(report, args.out)
    print(f"wrote {len(paths) - 1} knot drawings and {paths[-1]}")
    return EXIT_OK


def cmd_render(args) -> int:
    m = _load_mosaic(args.mosaic)
    _write(render(m, args.format), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotmosaic", description="Knot mosaics: tracing, identification, enumeration.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    table_help = f"knot table (default: ${TABLE_ENV} or the bundled table)"

    s = sub.add_parser("validate", help="check that a mosaic file is suitably connected")
    s.add_argument("mosaic")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("trace", help="print the PD code of a knot mosaic")
    s.add_argument("mosaic")
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("identify", help="name the knot drawn by a mosaic")
    s.add_argument("mosaic")
    s.add_argument("--table", help=table_help)
    s.set_defaults(func=cmd_identify)

    s = sub.add_parser("enumerate", help="sweep the layouts and write a JSON report")
    s.add_argument("--masks", type=parse_masks, default=None, help="comma-separated layout ids (default: all five)")
    s.add_argument("--crossings", type=parse_crossings, default=None, help="crossing tiles, a..b (default per layout)")
    s.add_argument("--workers", type=int, default=0, help="worker processes (default: CPU count)")
    s.add_argument("--no-prune", action="store_true", help="skip the corner-block pruning rules")
    s.add_argument("--table", help=table_help)
    s.add_argument("--out", default="report.json")
    s.add_argument("-q", "--quiet", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("tables", help="compare a report with the expected tile-number lists")
    s.add_argument("report")
    s.add_argument("--min-crossing-number", type=int, default=0)
    s.add_argument("--corollary", action="store_true", help="also list table knots never produced")
    s.add_argument("--table", help=table_help)
    s.add_argument("--out")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("catalog", help="write one drawing per knot plus a text catalog")
    s.add_argument("report")
    s.add_argument("--out", default="catalog")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("render", help="draw a mosaic as text or SVG")
    s.add_argument("mosaic")
    s.add_argument("--format", choices=RENDER_FORMATS, default="text")
    s.add_argument("--out")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except CrossingLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except TraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
