"""Shared fixtures for the renderer tests."""

import csv
from pathlib import Path

import pytest

pytest.importorskip("matplotlib")

_GOLDEN = Path(__file__).resolve().parent / "golden"

# The six committed figures of one synthetic run: three daily reuse series,
# one pairwise-weight CDF, two windowed quartile tables.
_GOLDEN_FIGURES = (
    ("reuse-item-daily.csv", "timeseries"),
    ("reuse-tag-daily.csv", "timeseries"),
    ("reuse-user-daily.csv", "timeseries"),
    ("similarity-user-item-cdf.csv", "cdf"),
    ("windows-user-item.csv", "boxplot"),
    ("windows-user-tag.csv", "boxplot"),
)


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return _GOLDEN


@pytest.fixture(scope="session")
def golden_figures():
    return _GOLDEN_FIGURES


@pytest.fixture(scope="session")
def row_count():
    def count(path: Path) -> int:
        with open(path, newline="", encoding="utf-8") as handle:
            return sum(1 for _ in csv.DictReader(handle))

    return count
