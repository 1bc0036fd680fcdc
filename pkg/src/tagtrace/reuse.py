"""Content-reuse classification and daily reuse series.

An assignment references a *new* entity (item, tag, or user) when the
entity has no occurrence strictly earlier in the trace's (timestamp, seq)
total order; otherwise the entity is *reused*. The first occurrence counts
as new even when later same-day assignments hit the same entity: the rule
is event-granular, not day-granular.

Daily aggregation counts assignments, not distinct entities ("how much of
today's activity touched known content"), with UTC calendar days. A
distinct-entity alternative is available via ``distinct=True`` for
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime, timezone
from typing import Iterable, Iterator, Sequence

from .errors import ConfigError, EmptyInputError
from .stats import lower_median, mean, population_sd
from .trace import TagAssignment, Trace

DIMENSIONS = ("item", "tag", "user")

_SECONDS_PER_DAY = 86400


@dataclass(frozen=True, slots=True)
class ClassifiedAssignment:
    assignment: TagAssignment
    item_new: bool
    tag_new: bool
    user_new: bool

    def is_new(self, dimension: str) -> bool:
        if dimension == "item":
            return self.item_new
        if dimension == "tag":
            return self.tag_new
        if dimension == "user":
            return self.user_new
        raise ConfigError(f"unknown dimension {dimension!r}; expected one of {DIMENSIONS}")


@dataclass(frozen=True, slots=True)
class DailyReuseRecord:
    """Per-day activity split into new vs reused for one dimension."""

    day: date
    total: int
    new_count: int
    reused_count: int

    @property
    def reused_pct(self) -> float:
        return self.reused_count / self.total * 100.0


@dataclass(frozen=True, slots=True)
class ReuseSummary:
    """Statistics over a daily series: absolute reused counts and reuse
    percentages. Standard deviation is population-style (divisor n);
    medians are lower medians."""

    dimension: str
    days: int
    mean_abs: float
    sd_abs: float
    median_abs: float
    mean_pct: float
    sd_pct: float
    median_pct: float

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "days": self.days,
            "mean_abs": self.mean_abs,
            "sd_abs": self.sd_abs,
            "median_abs": self.median_abs,
            "mean_pct": self.mean_pct,
            "sd_pct": self.sd_pct,
            "median_pct": self.median_pct,
        }


def classify(trace: Trace) -> Iterator[ClassifiedAssignment]:
    """Single forward pass; flags each assignment against entities seen
    strictly earlier. Output preserves trace order."""
    seen_items: set[str] = set()
    seen_tags: set[str] = set()
    seen_users: set[str] = set()
    for a in trace.assignments:
        item_new = a.item not in seen_items
        tag_new = a.tag not in seen_tags
        user_new = a.user not in seen_users
        if item_new:
            seen_items.add(a.item)
        if tag_new:
            seen_tags.add(a.tag)
        if user_new:
            seen_users.add(a.user)
        yield ClassifiedAssignment(a, item_new, tag_new, user_new)


def day_of(timestamp: int) -> date:
    return datetime.fromtimestamp(
        (timestamp // _SECONDS_PER_DAY) * _SECONDS_PER_DAY, tz=timezone.utc
    ).date()


def daily_series(
    classified: Iterable[ClassifiedAssignment],
    dimension: str,
    distinct: bool = False,
) -> list[DailyReuseRecord]:
    """Aggregate a classified stream into one record per UTC day with
    activity, sorted by day.

    With ``distinct=False`` (default) counts are assignments; with
    ``distinct=True`` each entity counts once per day, classified by
    whether its first-ever occurrence fell on that day.
    """
    if dimension not in DIMENSIONS:
        raise ConfigError(f"unknown dimension {dimension!r}; expected one of {DIMENSIONS}")
    totals: dict[int, int] = {}
    news: dict[int, int] = {}
    # distinct mode: (day_index, entity) pairs already counted
    seen_today: set[tuple[int, str]] = set()
    entity_field = dimension  # TagAssignment field names match
    for c in classified:
        day_index = c.assignment.timestamp // _SECONDS_PER_DAY
        if distinct:
            entity = getattr(c.assignment, entity_field)
            key = (day_index, entity)
            if key in seen_today:
                continue
            seen_today.add(key)
        totals[day_index] = totals.get(day_index, 0) + 1
        if c.is_new(dimension):
            news[day_index] = news.get(day_index, 0) + 1
    records = []
    for day_index in sorted(totals):
        total = totals[day_index]
        new_count = news.get(day_index, 0)
        records.append(
            DailyReuseRecord(
                day=datetime.fromtimestamp(
                    day_index * _SECONDS_PER_DAY, tz=timezone.utc
                ).date(),
                total=total,
                new_count=new_count,
                reused_count=total - new_count,
            )
        )
    return records


def summarize(series: Sequence[DailyReuseRecord], dimension: str) -> ReuseSummary:
    """Mean / population SD / lower median of the daily reused counts and
    reuse percentages."""
    if not series:
        raise EmptyInputError("cannot summarize an empty daily series")
    abs_counts = [float(r.reused_count) for r in series]
    pcts = [r.reused_pct for r in series]
    abs_sorted = sorted(abs_counts)
    pct_sorted = sorted(pcts)
    return ReuseSummary(
        dimension=dimension,
        days=len(series),
        mean_abs=mean(abs_counts),
        sd_abs=population_sd(abs_counts),
        median_abs=lower_median(abs_sorted),
        mean_pct=mean(pcts),
        sd_pct=population_sd(pcts),
        median_pct=lower_median(pct_sorted),
    )
