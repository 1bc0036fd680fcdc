"""Render tagtrace CSV outputs as figures.

Three figure kinds cover the plottable outputs of the analytics CLI:

* ``timeseries``: a daily reuse series (``reuse-*-daily.csv``), drawn as the
  reused percentage per UTC day.
* ``cdf``: a cumulative distribution over pair weights
  (``similarity-*-cdf.csv``), drawn as a monotone step curve.
* ``boxplot``: windowed weight quartiles (``windows-*.csv``), drawn with one
  box per window from the precomputed five-number summary.

The renderer computes no statistics of its own. Every drawn value comes
verbatim from the input CSV, so a figure can never disagree with the
analytics run that produced the file. Inputs are opened read-only and are
never modified.

Point counts reported in :class:`RenderResult` are read back from the
matplotlib artists after drawing, not inferred from the parser, so they
reflect what actually landed in the figure.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import date
from pathlib import Path

import matplotlib
from matplotlib.figure import Figure

KINDS = ("timeseries", "cdf", "boxplot")

FORMATS = (".svg", ".png")

# Columns each kind requires in the input CSV, in reporting order. Extra
# columns are tolerated so downstream schema additions do not break plots.
REQUIRED_COLUMNS = {
    "timeseries": ("day", "total", "new_count", "reused_count", "reused_pct"),
    "cdf": ("threshold", "cum_prob"),
    "boxplot": ("window_start", "population", "min", "q1", "median", "q3", "max"),
}

_DEFAULT_LABELS = {
    "timeseries": ("UTC day", "reused share of assignments (%)"),
    "cdf": ("weight threshold", "cumulative fraction of pairs"),
    "boxplot": ("window start (UTC day)", "pairwise weight"),
}

# Fixed salt so SVG element ids do not vary from run to run.
_SVG_HASHSALT = "tagfigures"


class FigureError(Exception):
    """Base class for everything this package raises on purpose."""


class SpecError(FigureError):
    """The figure description itself is unusable (bad kind, key, or path)."""


class SchemaError(FigureError):
    """The input CSV's columns do not match the requested kind."""


class DataError(FigureError):
    """A CSV cell could not be parsed as the schema demands."""


@dataclass(frozen=True, slots=True)
class FigureSpec:
    """One figure to render: what kind, from which CSV, to which image file.

    ``title``, ``xlabel``, and ``ylabel`` are optional; axis labels fall back
    to kind-specific defaults. The output format follows the ``out_path``
    extension and must be ``.svg`` or ``.png``.
    """

    kind: str
    csv_path: Path
    out_path: Path
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise SpecError(
                f"unknown figure kind {self.kind!r}; expected one of {', '.join(KINDS)}"
            )
        suffix = self.out_path.suffix.lower()
        if suffix not in FORMATS:
            raise SpecError(
                f"unsupported output format {suffix!r} for {self.out_path}; "
                f"expected one of {', '.join(FORMATS)}"
            )

    @classmethod
    def from_dict(cls, payload: object) -> "FigureSpec":
        """Build a spec from one JSON object out of a ``--spec`` file."""
        if not isinstance(payload, dict):
            raise SpecError("each figure spec must be a JSON object")
        allowed = {"kind", "csv", "out", "title", "xlabel", "ylabel"}
        unknown = sorted(set(payload) - allowed)
        if unknown:
            raise SpecError(f"unknown spec key {unknown[0]!r}")
        for key in ("kind", "csv", "out"):
            if key not in payload:
                raise SpecError(f"spec is missing required key {key!r}")
        return cls(
            kind=str(payload["kind"]),
            csv_path=Path(str(payload["csv"])),
            out_path=Path(str(payload["out"])),
            title=payload.get("title"),
            xlabel=payload.get("xlabel"),
            ylabel=payload.get("ylabel"),
        )


@dataclass(frozen=True, slots=True)
class RenderResult:
    """What one render call drew.

    ``rows`` counts the data rows read from the CSV. ``points`` counts what
    was actually plotted: vertices of the line for ``timeseries`` and
    ``cdf``, boxes for ``boxplot``. ``skipped`` counts boxplot windows whose
    five-number summary was empty (windows with no pairs), which draw
    nothing.
    """

    kind: str
    out_path: Path
    rows: int
    points: int
    skipped: int = 0


def _load_rows(path: Path, kind: str) -> list[dict[str, str]]:
    required = REQUIRED_COLUMNS[kind]
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames
        if header is None:
            raise SchemaError(f"{path}: no header row")
        for column in required:
            if column not in header:
                raise SchemaError(
                    f"{path}: missing column {column!r} required for kind {kind!r}"
                )
        return list(reader)


def _cell_float(row: dict[str, str], column: str, path: Path, lineno: int) -> float:
    text = row[column]
    try:
        return float(text)
    except (TypeError, ValueError) as exc:
        raise DataError(
            f"{path} line {lineno}: column {column!r} has non-numeric value {text!r}"
        ) from exc


def _draw_timeseries(ax, rows: list[dict[str, str]], path: Path) -> int:
    days: list[date] = []
    percentages: list[float] = []
    for lineno, row in enumerate(rows, start=2):
        try:
            day = date.fromisoformat(row["day"])
        except (TypeError, ValueError) as exc:
            raise DataError(
                f"{path} line {lineno}: column 'day' has non-date value {row['day']!r}"
            ) from exc
        days.append(day)
        percentages.append(_cell_float(row, "reused_pct", path, lineno))
    (line,) = ax.plot(days, percentages, marker=".", markersize=4, linewidth=1.0)
    return len(line.get_xdata())


def _draw_cdf(ax, rows: list[dict[str, str]], path: Path) -> int:
    thresholds: list[float] = []
    probabilities: list[float] = []
    for lineno, row in enumerate(rows, start=2):
        thresholds.append(_cell_float(row, "threshold", path, lineno))
        probabilities.append(_cell_float(row, "cum_prob", path, lineno))
    (line,) = ax.step(thresholds, probabilities, where="post", linewidth=1.2)
    ax.set_ylim(0.0, 1.05)
    return len(line.get_xdata())


_BOX_COLUMNS = ("min", "q1", "median", "q3", "max")


def _draw_boxplot(ax, rows: list[dict[str, str]], path: Path) -> tuple[int, int]:
    stats: list[dict[str, object]] = []
    skipped = 0
    for lineno, row in enumerate(rows, start=2):
        cells = [row[column] for column in _BOX_COLUMNS]
        if all(cell in (None, "") for cell in cells):
            # A window that held no pairs carries no summary and no box.
            skipped += 1
            continue
        if any(cell in (None, "") for cell in cells):
            raise DataError(
                f"{path} line {lineno}: partial five-number summary; "
                f"all of {', '.join(_BOX_COLUMNS)} must be present or all empty"
            )
        low, q1, median, q3, high = (
            _cell_float(row, column, path, lineno) for column in _BOX_COLUMNS
        )
        stats.append(
            {
                "label": row["window_start"],
                "whislo": low,
                "q1": q1,
                "med": median,
                "q3": q3,
                "whishi": high,
            }
        )
    if not stats:
        return 0, skipped
    artists = ax.bxp(stats, showfliers=False)
    ax.tick_params(axis="x", labelrotation=45)
    return len(artists["boxes"]), skipped


def render(spec: FigureSpec) -> RenderResult:
    """Draw one figure and write it to ``spec.out_path``.

    Returns a :class:`RenderResult` describing the rows read and the points
    drawn. Parent directories of the output path are created as needed.
    """
    rows = _load_rows(spec.csv_path, spec.kind)
    fig = Figure(figsize=(6.4, 4.0))
    ax = fig.add_subplot()
    skipped = 0
    if spec.kind == "timeseries":
        points = _draw_timeseries(ax, rows, spec.csv_path)
    elif spec.kind == "cdf":
        points = _draw_cdf(ax, rows, spec.csv_path)
    else:
        points, skipped = _draw_boxplot(ax, rows, spec.csv_path)

    default_x, default_y = _DEFAULT_LABELS[spec.kind]
    ax.set_xlabel(spec.xlabel if spec.xlabel is not None else default_x)
    ax.set_ylabel(spec.ylabel if spec.ylabel is not None else default_y)
    if spec.title is not None:
        ax.set_title(spec.title)
    ax.grid(True, linewidth=0.3, alpha=0.5)
    if spec.kind == "timeseries":
        fig.autofmt_xdate()

    spec.out_path.parent.mkdir(parents=True, exist_ok=True)
    suffix = spec.out_path.suffix.lower()
    with matplotlib.rc_context({"svg.hashsalt": _SVG_HASHSALT}):
        if suffix == ".svg":
            # A null Date keeps repeated renders byte-identical.
            fig.savefig(spec.out_path, format="svg", metadata={"Date": None})
        else:
            fig.savefig(spec.out_path, format="png", dpi=150)
    return RenderResult(
        kind=spec.kind,
        out_path=spec.out_path,
        rows=len(rows),
        points=points,
        skipped=skipped,
    )
