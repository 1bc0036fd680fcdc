"""Trace model: tag-assignment records, file ingestion, and user profiles.

A trace is the complete tagging history of one community: every event where
a user attached one tag to one item at some timestamp. Two file formats are
supported:

- ``canonical-tsv``: UTF-8, LF-terminated, ``user <TAB> item <TAB> tag <TAB>
  timestamp``. Timestamps are integer epoch seconds or ISO-8601 (naive times
  are taken as UTC); ``#``-prefixed comment lines and blank lines are ignored
  and excluded from line accounting.
- ``citeulike-pipe``: pipe-delimited ``item|user|timestamp|tag`` as found in
  public "who-posted-what" dumps. The column order is configurable because
  upstream dump layouts have varied.

Parsing is single-pass and streaming; malformed lines are counted, never
fatal. A constructed Trace and the profiles derived from it are immutable
and safe for concurrent readers.
"""

from __future__ import annotations

import io
import json
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable, Iterator, Mapping, Union

from .errors import ConfigError, EmptyTraceError

FORMATS = ("canonical-tsv", "citeulike-pipe")

DEFAULT_PIPE_COLUMNS = ("item", "user", "timestamp", "tag")

REJECT_REASONS = ("malformed", "empty_tag", "bad_timestamp", "duplicate")

# 2-digit UTC offsets ("+00") predate what fromisoformat accepts on 3.10.
_SHORT_OFFSET = re.compile(r"([+-]\d{2})$")


@dataclass(frozen=True, slots=True)
class TagAssignment:
    """One trace event: a user attached one tag to one item at one time.

    ``seq`` is the record's ordinal position in its source and breaks
    timestamp ties so the trace has a total order.
    """

    user: str
    tag: str
    item: str
    timestamp: int
    seq: int

    def sort_key(self) -> tuple[int, int]:
        return (self.timestamp, self.seq)


@dataclass(frozen=True, slots=True)
class Trace:
    """A time-ordered, deduplicated sequence of tag assignments.

    ``assignments`` is sorted by (timestamp, seq) with seq renumbered to the
    sorted position, so equal traces compare equal regardless of original
    input order. ``users``/``items``/``tags`` are exactly the projections of
    the sequence.
    """

    assignments: tuple[TagAssignment, ...]
    users: frozenset[str]
    items: frozenset[str]
    tags: frozenset[str]
    span: tuple[int, int]

    @classmethod
    def from_assignments(cls, assignments: Iterable[TagAssignment]) -> "Trace":
        """Canonical constructor: sort, drop exact duplicate quadruples,
        renumber seq, derive the entity sets."""
        ordered = sorted(assignments, key=TagAssignment.sort_key)
        seen: set[tuple[str, str, str, int]] = set()
        unique: list[TagAssignment] = []
        for a in ordered:
            quad = (a.user, a.tag, a.item, a.timestamp)
            if quad in seen:
                continue
            seen.add(quad)
            unique.append(a)
        if not unique:
            raise EmptyTraceError("a trace needs at least one assignment")
        renumbered = tuple(
            TagAssignment(a.user, a.tag, a.item, a.timestamp, i)
            for i, a in enumerate(unique)
        )
        return cls(
            assignments=renumbered,
            users=frozenset(a.user for a in renumbered),
            items=frozenset(a.item for a in renumbered),
            tags=frozenset(a.tag for a in renumbered),
            span=(renumbered[0].timestamp, renumbered[-1].timestamp),
        )

    def __len__(self) -> int:
        return len(self.assignments)

    def to_tsv(self, dest: Union[str, Path, IO[str]]) -> None:
        """Write canonical-tsv. Round-trips through parse_trace exactly."""
        own = isinstance(dest, (str, Path))
        out = open(dest, "w", encoding="utf-8", newline="\n") if own else dest
        try:
            for a in self.assignments:
                out.write(f"{a.user}\t{a.item}\t{a.tag}\t{a.timestamp}\n")
        finally:
            if own:
                out.close()


@dataclass(frozen=True, slots=True)
class UserProfile:
    """Per-user activity summary: item library, tag vocabulary, event count."""

    user: str
    items: frozenset[str]
    tags: frozenset[str]
    assignments: int
    first_seen: int
    last_seen: int


@dataclass(slots=True)
class ValidationReport:
    """Line-level accounting for one parsed source.

    ``parsed + rejected == total_lines`` always holds; comment and blank
    lines are skipped before accounting. ``reasons`` breaks rejections down
    into malformed / empty_tag / bad_timestamp / duplicate.
    """

    total_lines: int = 0
    parsed: int = 0
    rejected: int = 0
    reasons: dict[str, int] = None  # type: ignore[assignment]
    span: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.reasons is None:
            self.reasons = {reason: 0 for reason in REJECT_REASONS}

    def reject(self, reason: str) -> None:
        self.rejected += 1
        self.reasons[reason] += 1

    def as_dict(self) -> dict:
        return {
            "total_lines": self.total_lines,
            "parsed": self.parsed,
            "rejected": self.rejected,
            "reasons": dict(self.reasons),
            "span": list(self.span) if self.span else None,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent, sort_keys=True)


def parse_timestamp(text: str) -> int:
    """Epoch seconds from a digit string or an ISO-8601 datetime.

    Naive datetimes are taken as UTC; fractional seconds are truncated.
    Raises ValueError for anything else (including negative times).
    """
    text = text.strip()
    if not text:
        raise ValueError("empty timestamp")
    if text.lstrip("+-").isdigit():
        value = int(text)
        if value < 0:
            raise ValueError(f"negative timestamp {value}")
        return value
    iso = text.replace("Z", "+00:00") if text.endswith("Z") else text
    iso = _SHORT_OFFSET.sub(r"\1:00", iso)
    dt = datetime.fromisoformat(iso)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    value = int(dt.timestamp())
    if value < 0:
        raise ValueError(f"timestamp before epoch: {text!r}")
    return value


def _iter_text_lines(source) -> Iterator[str]:
    """Yield decoded lines from a path, a text stream, or a byte stream.

    UnicodeDecodeError surfaces with the offending line replaced by a
    sentinel that downstream field parsing rejects as malformed.
    """
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            yield from _iter_text_lines(fh)
        return
    for raw in source:
        if isinstance(raw, bytes):
            try:
                yield raw.decode("utf-8")
            except UnicodeDecodeError:
                yield "\x00undecodable"
        else:
            yield raw


def _field_indices(columns: Iterable[str]) -> dict[str, int]:
    cols = list(columns)
    needed = {"user", "item", "tag", "timestamp"}
    if set(cols) < needed or len(cols) != len(set(cols)):
        raise ConfigError(
            f"pipe column order must name each of {sorted(needed)} once, got {cols!r}"
        )
    return {name: cols.index(name) for name in needed}


def parse_trace(
    source,
    fmt: str = "canonical-tsv",
    pipe_columns: Iterable[str] = DEFAULT_PIPE_COLUMNS,
) -> tuple[Trace, ValidationReport]:
    """Stream-parse a trace source into a validated, ordered Trace.

    Tags are trimmed and case-folded; a tag empty after normalization
    rejects the line. Exact duplicate (user, tag, item, timestamp)
    quadruples are dropped and counted. Raises EmptyTraceError when nothing
    parses and ConfigError for an unknown format tag.
    """
    if fmt == "canonical-tsv":
        sep, idx = "\t", {"user": 0, "item": 1, "tag": 2, "timestamp": 3}
    elif fmt == "citeulike-pipe":
        sep, idx = "|", _field_indices(pipe_columns)
    else:
        raise ConfigError(f"unknown trace format {fmt!r}; expected one of {FORMATS}")

    width = max(idx.values()) + 1
    report = ValidationReport()
    seen: set[tuple[str, str, str, int]] = set()
    assignments: list[TagAssignment] = []
    # Interning entity strings keeps memory proportional to distinct
    # entities instead of total occurrences.
    intern: dict[str, str] = {}

    def canon(s: str) -> str:
        return intern.setdefault(s, s)

    for line in _iter_text_lines(source):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        report.total_lines += 1
        parts = stripped.split(sep)
        if len(parts) < width:
            report.reject("malformed")
            continue
        user = parts[idx["user"]].strip()
        item = parts[idx["item"]].strip()
        if not user or not item:
            report.reject("malformed")
            continue
        tag = parts[idx["tag"]].strip().casefold()
        if not tag:
            report.reject("empty_tag")
            continue
        try:
            ts = parse_timestamp(parts[idx["timestamp"]])
        except ValueError:
            report.reject("bad_timestamp")
            continue
        quad = (canon(user), canon(tag), canon(item), ts)
        if quad in seen:
            report.reject("duplicate")
            continue
        seen.add(quad)
        report.parsed += 1
        assignments.append(
            TagAssignment(quad[0], quad[1], quad[2], ts, len(assignments))
        )

    if not assignments:
        raise EmptyTraceError(
            f"no parseable assignments in source ({report.total_lines} lines, "
            f"{report.rejected} rejected)"
        )
    trace = Trace.from_assignments(assignments)
    report.span = trace.span
    return trace, report


def parse_trace_text(text: str, fmt: str = "canonical-tsv", **kwargs) -> tuple[Trace, ValidationReport]:
    """Convenience wrapper for in-memory sources (tests, docs)."""
    return parse_trace(io.StringIO(text), fmt=fmt, **kwargs)


def build_profiles(trace: Trace) -> Mapping[str, UserProfile]:
    """One immutable profile per distinct user of the trace.

    The unions of the per-user item sets and tag sets reproduce the trace's
    item and tag sets, and the per-user assignment counts sum to the trace
    length.
    """
    items: dict[str, set[str]] = {}
    tags: dict[str, set[str]] = {}
    counts: dict[str, int] = {}
    first: dict[str, int] = {}
    last: dict[str, int] = {}
    for a in trace.assignments:
        u = a.user
        if u not in counts:
            items[u] = set()
            tags[u] = set()
            counts[u] = 0
            first[u] = a.timestamp
        items[u].add(a.item)
        tags[u].add(a.tag)
        counts[u] += 1
        last[u] = a.timestamp
    return {
        u: UserProfile(
            user=u,
            items=frozenset(items[u]),
            tags=frozenset(tags[u]),
            assignments=counts[u],
            first_seen=first[u],
            last_seen=last[u],
        )
        for u in counts
    }
