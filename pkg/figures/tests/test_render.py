"""Unit tests for the render module."""

import os

import pytest
from matplotlib.figure import Figure

from tagfigures.render import (
    DataError,
    FigureSpec,
    SchemaError,
    SpecError,
    _draw_cdf,
    _load_rows,
    render,
)

REUSE_HEADER = "day,total,new_count,reused_count,reused_pct\n"
WINDOW_HEADER = "window_start,population,min,q1,median,q3,max\n"


def _spec(kind, csv_path, out_path, **kwargs):
    return FigureSpec(kind=kind, csv_path=csv_path, out_path=out_path, **kwargs)


def test_timeseries_three_rows_three_points(tmp_path):
    src = tmp_path / "daily.csv"
    src.write_text(
        REUSE_HEADER
        + "2005-01-01,10,4,6,60.0\n2005-01-02,8,2,6,75.0\n2005-01-03,5,5,0,0.0\n"
    )
    out = tmp_path / "daily.svg"
    result = render(_spec("timeseries", src, out))
    assert result.rows == 3
    assert result.points == 3
    assert result.skipped == 0
    assert out.exists() and out.stat().st_size > 0
    assert b"<svg" in out.read_bytes()


def test_cdf_golden_is_monotone_step_ending_at_one(golden_dir):
    src = golden_dir / "similarity-user-item-cdf.csv"
    rows = _load_rows(src, "cdf")
    fig = Figure()
    ax = fig.add_subplot()
    points = _draw_cdf(ax, rows, src)
    assert points == len(rows)
    (line,) = ax.lines
    assert line.get_drawstyle() == "steps-post"
    ys = [float(y) for y in line.get_ydata()]
    assert ys == sorted(ys)
    assert ys[-1] == 1.0


def test_boxplot_single_window_single_box(tmp_path):
    src = tmp_path / "windows.csv"
    src.write_text(WINDOW_HEADER + "2005-01-01,10,0.1,0.2,0.3,0.4,0.5\n")
    result = render(_spec("boxplot", src, tmp_path / "w.svg"))
    assert result.rows == 1
    assert result.points == 1
    assert result.skipped == 0


def test_boxplot_empty_window_is_skipped(tmp_path):
    src = tmp_path / "windows.csv"
    src.write_text(
        WINDOW_HEADER + "2005-01-01,10,0.1,0.2,0.3,0.4,0.5\n2005-01-31,0,,,,,\n"
    )
    result = render(_spec("boxplot", src, tmp_path / "w.svg"))
    assert result.rows == 2
    assert result.points == 1
    assert result.skipped == 1


def test_boxplot_partial_summary_rejected(tmp_path):
    src = tmp_path / "windows.csv"
    src.write_text(WINDOW_HEADER + "2005-01-01,10,0.1,0.2,,0.4,0.5\n")
    with pytest.raises(DataError, match="partial five-number summary"):
        render(_spec("boxplot", src, tmp_path / "w.svg"))


@pytest.mark.parametrize(
    "kind, header, dropped",
    [
        ("timeseries", "day,total,new_count,reused_count\n", "reused_pct"),
        ("cdf", "threshold\n", "cum_prob"),
        ("boxplot", "window_start,population,min,q1,median,max\n", "q3"),
    ],
)
def test_missing_column_is_named(tmp_path, kind, header, dropped):
    src = tmp_path / "bad.csv"
    src.write_text(header)
    with pytest.raises(SchemaError) as excinfo:
        render(_spec(kind, src, tmp_path / "x.svg"))
    message = str(excinfo.value)
    assert repr(dropped) in message
    assert repr(kind) in message


def test_file_without_header_rejected(tmp_path):
    src = tmp_path / "empty.csv"
    src.write_text("")
    with pytest.raises(SchemaError, match="no header row"):
        render(_spec("cdf", src, tmp_path / "x.svg"))


def test_non_numeric_cell_names_column_and_line(tmp_path):
    src = tmp_path / "daily.csv"
    src.write_text(REUSE_HEADER + "2005-01-01,10,4,6,sixty\n")
    with pytest.raises(DataError, match=r"line 2.*'reused_pct'.*'sixty'"):
        render(_spec("timeseries", src, tmp_path / "x.svg"))


def test_non_date_day_rejected(tmp_path):
    src = tmp_path / "daily.csv"
    src.write_text(REUSE_HEADER + "yesterday,10,4,6,60.0\n")
    with pytest.raises(DataError, match=r"line 2.*'day'"):
        render(_spec("timeseries", src, tmp_path / "x.svg"))


def test_extra_columns_tolerated(tmp_path):
    src = tmp_path / "daily.csv"
    src.write_text(
        "day,total,new_count,reused_count,reused_pct,note\n"
        + "2005-01-01,10,4,6,60.0,fine\n"
    )
    result = render(_spec("timeseries", src, tmp_path / "x.svg"))
    assert result.points == 1


def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(SpecError, match="unknown figure kind 'scatter'"):
        _spec("scatter", tmp_path / "a.csv", tmp_path / "a.svg")


def test_unsupported_extension_rejected(tmp_path):
    with pytest.raises(SpecError, match=r"unsupported output format '\.pdf'"):
        _spec("cdf", tmp_path / "a.csv", tmp_path / "a.pdf")


def test_from_dict_requires_keys_and_rejects_unknown():
    with pytest.raises(SpecError, match="missing required key 'out'"):
        FigureSpec.from_dict({"kind": "cdf", "csv": "a.csv"})
    with pytest.raises(SpecError, match="unknown spec key 'color'"):
        FigureSpec.from_dict(
            {"kind": "cdf", "csv": "a.csv", "out": "a.svg", "color": "red"}
        )
    with pytest.raises(SpecError, match="must be a JSON object"):
        FigureSpec.from_dict(["cdf", "a.csv", "a.svg"])


def test_render_is_read_only(golden_dir, tmp_path):
    src = golden_dir / "windows-user-item.csv"
    before_bytes = src.read_bytes()
    before_stat = os.stat(src)
    render(_spec("boxplot", src, tmp_path / "w.png"))
    assert src.read_bytes() == before_bytes
    assert os.stat(src).st_mtime_ns == before_stat.st_mtime_ns


def test_repeat_render_byte_identical(golden_dir, tmp_path):
    src = golden_dir / "reuse-tag-daily.csv"
    first = tmp_path / "a.svg"
    second = tmp_path / "b.svg"
    render(_spec("timeseries", src, first, title="tag reuse"))
    render(_spec("timeseries", src, second, title="tag reuse"))
    assert first.read_bytes() == second.read_bytes()
    first_png = tmp_path / "a.png"
    second_png = tmp_path / "b.png"
    render(_spec("timeseries", src, first_png))
    render(_spec("timeseries", src, second_png))
    assert first_png.read_bytes() == second_png.read_bytes()


def test_output_parent_directories_created(golden_dir, tmp_path):
    out = tmp_path / "deep" / "nested" / "fig.png"
    result = render(_spec("cdf", golden_dir / "similarity-user-item-cdf.csv", out))
    assert out.exists()
    assert result.out_path == out


def test_custom_labels_and_title_applied(tmp_path):
    src = tmp_path / "daily.csv"
    src.write_text(REUSE_HEADER + "2005-01-01,10,4,6,60.0\n")
    out = tmp_path / "labeled.svg"
    render(
        _spec(
            "timeseries",
            src,
            out,
            title="my title",
            xlabel="my x",
            ylabel="my y",
        )
    )
    text = out.read_text()
    assert "my title" in text
    assert "my x" in text
    assert "my y" in text
