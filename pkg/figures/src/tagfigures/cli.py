"""Command line entry point for the figure renderer.

Two invocation styles:

* positional: ``tagtrace-figures KIND CSV -o OUT.svg`` renders one figure.
* batch: ``tagtrace-figures --spec figures.json`` renders every figure the
  JSON file describes. The file holds one spec object or a list of them,
  each with keys ``kind``, ``csv``, ``out`` and optional ``title``,
  ``xlabel``, ``ylabel``.

Exit codes: 0 on success, 2 for unusable specs or arguments, 1 for input
problems (missing file, schema mismatch, bad cell). Errors are emitted to
stderr as one JSON object, matching the analytics CLI.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from tagfigures.render import (
    KINDS,
    DataError,
    FigureError,
    FigureSpec,
    SchemaError,
    SpecError,
    render,
)

__version__ = "0.1.0"

_USAGE_EXIT = 2
_DATA_EXIT = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tagtrace-figures",
        description="render tagtrace CSV outputs as SVG or PNG figures",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--spec", default=None, help="JSON file describing one figure or a list of figures"
    )
    parser.add_argument("kind", nargs="?", choices=KINDS, help="figure kind")
    parser.add_argument("csv", nargs="?", help="input CSV path")
    parser.add_argument("-o", "--out", default=None, help="output image (.svg or .png)")
    parser.add_argument("--title", default=None)
    parser.add_argument("--xlabel", default=None)
    parser.add_argument("--ylabel", default=None)
    return parser


def _load_spec_file(path: str) -> list[FigureSpec]:
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    except json.JSONDecodeError as exc:
        raise SpecError(f"cannot parse spec file {path}: {exc}") from exc
    items = payload if isinstance(payload, list) else [payload]
    if not items:
        raise SpecError(f"spec file {path} lists no figures")
    return [FigureSpec.from_dict(item) for item in items]


def _specs_from_args(args: argparse.Namespace) -> list[FigureSpec]:
    if args.spec is not None:
        positional = (args.kind, args.csv, args.out, args.title, args.xlabel, args.ylabel)
        if any(value is not None for value in positional):
            raise SpecError("--spec cannot be combined with positional arguments")
        return _load_spec_file(args.spec)
    if args.kind is None or args.csv is None or args.out is None:
        raise SpecError("either --spec, or all of KIND, CSV and -o/--out, are required")
    return [
        FigureSpec(
            kind=args.kind,
            csv_path=Path(args.csv),
            out_path=Path(args.out),
            title=args.title,
            xlabel=args.xlabel,
            ylabel=args.ylabel,
        )
    ]


def _emit_error(exc: Exception) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(payload), file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        specs = _specs_from_args(args)
        for spec in specs:
            result = render(spec)
            note = f", {result.skipped} empty windows skipped" if result.skipped else ""
            print(
                f"wrote {result.out_path} ({result.kind}: {result.points} drawn "
                f"from {result.rows} rows{note})"
            )
    except SpecError as exc:
        _emit_error(exc)
        return _USAGE_EXIT
    except (SchemaError, DataError) as exc:
        _emit_error(exc)
        return _DATA_EXIT
    except FigureError as exc:
        _emit_error(exc)
        return _DATA_EXIT
    except OSError as exc:
        _emit_error(exc)
        return _DATA_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
