"""Pairwise interest-sharing between users.

The weight of a user pair is the Jaccard ratio of their item sets
(``user-item`` mode) or tag vocabularies (``user-tag`` mode):
|A ∩ B| / |A ∪ B|. All-pairs computation goes through an inverted index
(entity -> posting list of users), so work is proportional to the number
of co-occurrences rather than to the C(|U|, 2) pair universe; the result
is identical to an exhaustive double loop.

Conventions pinned here and relied on by the statistics:

- Distribution statistics default to the population of pairs with nonzero
  overlap; the complementary "all pairs" population (including the implied
  zeros) is available and labeled.
- Medians are lower medians; quartiles are nearest-rank order statistics.
- Weights are computed as exact integer-count divisions, so independent
  implementations agree bitwise on every weight.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from datetime import date
from itertools import combinations
from typing import Iterator, Mapping

from .errors import ConfigError, EmptyInputError, PairLimitError
from .reuse import day_of
from .stats import five_number
from .trace import Trace, UserProfile

MODES = ("user-item", "user-tag")

_SECONDS_PER_DAY = 86400


def _mode_attr(mode: str) -> str:
    if mode == "user-item":
        return "items"
    if mode == "user-tag":
        return "tags"
    raise ConfigError(f"unknown similarity mode {mode!r}; expected one of {MODES}")


def pair_similarity(a: UserProfile, b: UserProfile, mode: str) -> float:
    """Jaccard weight of one user pair in the selected dimension."""
    attr = _mode_attr(mode)
    if a.user == b.user:
        raise ConfigError("self-pairs are not defined")
    sa: frozenset = getattr(a, attr)
    sb: frozenset = getattr(b, attr)
    inter = len(sa & sb)
    if inter == 0:
        return 0.0
    return inter / (len(sa) + len(sb) - inter)


class SparseSimilarity:
    """All nonzero pairwise weights over a fixed, sorted user universe.

    Pairs are keyed internally by packed index (i * n + j with i < j), which
    keeps the hot dictionary at one small int per pair instead of a tuple of
    strings. Zero pairs are implied: ``zero_pairs`` = C(universe, 2) minus
    the stored count. Symmetry holds by construction.
    """

    __slots__ = ("mode", "users", "_index", "_weights", "_neighbors")

    def __init__(self, mode: str, users, weights: dict[int, float]):
        _mode_attr(mode)
        self.mode = mode
        self.users: tuple[str, ...] = tuple(users)
        self._index = {u: i for i, u in enumerate(self.users)}
        self._weights = weights
        self._neighbors: dict[str, list[tuple[str, float]]] | None = None

    @classmethod
    def from_entries(
        cls, mode: str, users, entries: Mapping[tuple[str, str], float]
    ) -> "SparseSimilarity":
        """Build from explicit (user_a, user_b) -> weight entries."""
        ordered = tuple(sorted(users))
        index = {u: i for i, u in enumerate(ordered)}
        n = len(ordered)
        weights: dict[int, float] = {}
        for (a, b), w in entries.items():
            if a == b:
                raise ConfigError(f"self-pair ({a!r}, {b!r}) is not defined")
            if not 0.0 < w <= 1.0:
                raise ConfigError(f"weight for ({a!r}, {b!r}) outside (0, 1]: {w}")
            i, j = index[a], index[b]
            if i > j:
                i, j = j, i
            weights[i * n + j] = w
        return cls(mode, ordered, weights)

    @property
    def universe(self) -> int:
        return len(self.users)

    def __len__(self) -> int:
        return len(self._weights)

    @property
    def zero_pairs(self) -> int:
        n = len(self.users)
        return n * (n - 1) // 2 - len(self._weights)

    def weight(self, a: str, b: str) -> float:
        if a == b:
            raise ConfigError("self-pairs are not defined")
        try:
            i, j = self._index[a], self._index[b]
        except KeyError as exc:
            raise KeyError(f"user {exc.args[0]!r} not in similarity universe") from None
        if i > j:
            i, j = j, i
        return self._weights.get(i * len(self.users) + j, 0.0)

    def nonzero_weights(self):
        """View over the stored (strictly positive) weights."""
        return self._weights.values()

    def pairs(self) -> Iterator[tuple[str, str, float]]:
        """Nonzero pairs as (user_a, user_b, weight), a before b in sorted
        user order; iteration order is deterministic."""
        n = len(self.users)
        for key in sorted(self._weights):
            i, j = divmod(key, n)
            yield self.users[i], self.users[j], self._weights[key]

    def neighbors_of(self, user: str) -> list[tuple[str, float]]:
        """Users sharing nonzero weight with ``user``, as (neighbor, weight)
        in no particular order. Built lazily once, then cached."""
        if self._neighbors is None:
            n = len(self.users)
            adj: dict[str, list[tuple[str, float]]] = {u: [] for u in self.users}
            for key, w in self._weights.items():
                i, j = divmod(key, n)
                adj[self.users[i]].append((self.users[j], w))
                adj[self.users[j]].append((self.users[i], w))
            self._neighbors = adj
        try:
            return self._neighbors[user]
        except KeyError:
            raise KeyError(f"user {user!r} not in similarity universe") from None


def _intersection_counts(
    sets: list, n: int, max_pairs: int | None = None
) -> Counter:
    """Packed pair -> intersection size via the inverted index.

    Posting lists hold ascending user indices, so combinations() always emits
    i < j. The cap is checked after each entity to fail before the dictionary
    grows far past it.
    """
    postings: dict[str, list[int]] = {}
    for i, s in enumerate(sets):
        for entity in s:
            postings.setdefault(entity, []).append(i)
    counts: Counter = Counter()
    for plist in postings.values():
        if len(plist) < 2:
            continue
        counts.update(a * n + b for a, b in combinations(plist, 2))
        if max_pairs is not None and len(counts) > max_pairs:
            raise PairLimitError(
                f"nonzero pair count exceeded the cap of {max_pairs}; "
                "raise the cap or reduce the input"
            )
    return counts


def _counts_to_weights(counts: Counter, sizes: list[int], n: int) -> dict[int, float]:
    for key, c in counts.items():
        i, j = divmod(key, n)
        counts[key] = c / (sizes[i] + sizes[j] - c)
    return counts


def all_pairs(
    profiles: Mapping[str, UserProfile],
    mode: str,
    max_pairs: int | None = None,
) -> SparseSimilarity:
    """Every user pair with nonzero overlap, weighted.

    ``max_pairs`` caps the stored entry count; exceeding it raises rather
    than truncating silently.
    """
    attr = _mode_attr(mode)
    if len(profiles) < 2:
        raise EmptyInputError("pairwise similarity needs at least 2 profiles")
    users = sorted(profiles)
    n = len(users)
    sets = [getattr(profiles[u], attr) for u in users]
    sizes = [len(s) for s in sets]
    counts = _intersection_counts(sets, n, max_pairs)
    return SparseSimilarity(mode, users, _counts_to_weights(counts, sizes, n))


@dataclass(frozen=True, slots=True)
class SimilaritySummary:
    mode: str
    population: str
    pairs: int
    mean: float
    sd: float
    median: float

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "population": self.population,
            "pairs": self.pairs,
            "mean": self.mean,
            "sd": self.sd,
            "median": self.median,
        }


def summary(sim: SparseSimilarity, population: str = "nonzero") -> SimilaritySummary:
    """Mean / population SD / lower median of pair weights.

    ``population="all"`` mixes in the implied zero pairs without
    materializing them; the zeros contribute only through counts.
    """
    if population not in ("nonzero", "all"):
        raise ConfigError(f"population must be 'nonzero' or 'all', got {population!r}")
    weights = list(sim.nonzero_weights())
    zeros = sim.zero_pairs if population == "all" else 0
    total = len(weights) + zeros
    if total == 0:
        raise EmptyInputError(f"no pairs in population {population!r}")
    m = math.fsum(weights) / total
    var = (math.fsum((w - m) ** 2 for w in weights) + zeros * m * m) / total
    weights.sort()
    mid = (total - 1) // 2
    median = 0.0 if mid < zeros else weights[mid - zeros]
    return SimilaritySummary(
        mode=sim.mode,
        population=population,
        pairs=total,
        mean=m,
        sd=math.sqrt(max(0.0, var)),
        median=median,
    )


def cdf(
    sim: SparseSimilarity, population: str = "nonzero", grid: int = 100
) -> list[tuple[float, float]]:
    """Cumulative distribution of pair weights as (threshold, P[w <= t]).

    Sampled on a regular grid of ``grid`` steps over [0, 1] plus every
    distinct weight, so no step of the underlying function is missed. The
    final point always has probability 1.0.
    """
    if population not in ("nonzero", "all"):
        raise ConfigError(f"population must be 'nonzero' or 'all', got {population!r}")
    if grid < 1:
        raise ConfigError(f"grid must be a positive step count, got {grid}")
    weights = sorted(sim.nonzero_weights())
    zeros = sim.zero_pairs if population == "all" else 0
    total = len(weights) + zeros
    if total == 0:
        raise EmptyInputError(f"no pairs in population {population!r}")
    thresholds = sorted({i / grid for i in range(grid + 1)} | set(weights))
    return [(t, (zeros + bisect_right(weights, t)) / total) for t in thresholds]


@dataclass(frozen=True, slots=True)
class WindowStats:
    """Distribution snapshot of one time window.

    ``population`` counts the user pairs with nonzero overlap inside the
    window (the same pairs the quartiles describe); windows with no such
    pair carry population=0 and no quartiles.
    """

    window_start: date
    population: int
    quartiles: tuple[float, float, float, float, float] | None


def windowed(
    trace: Trace,
    mode: str,
    window_days: int = 30,
    cumulative: bool = False,
) -> list[WindowStats]:
    """Per-window weight quartiles across the trace's lifetime.

    The trace is cut into consecutive disjoint windows of ``window_days``
    starting at the first event; profiles are rebuilt from each window's own
    assignments. ``cumulative=True`` instead grows profiles from the start
    of the trace through the end of each window, for reading long-term
    drift rather than per-period behavior.
    """
    attr_item = _mode_attr(mode) == "items"
    if window_days < 1:
        raise ConfigError(f"window_days must be >= 1, got {window_days}")
    width = window_days * _SECONDS_PER_DAY
    start = trace.span[0]
    count = (trace.span[1] - start) // width + 1
    buckets: list[dict[str, set[str]]] = [{} for _ in range(count)]
    for a in trace.assignments:
        entity = a.item if attr_item else a.tag
        bucket = buckets[(a.timestamp - start) // width]
        bucket.setdefault(a.user, set()).add(entity)
    out: list[WindowStats] = []
    carry: dict[str, set[str]] = {}
    for k, bucket in enumerate(buckets):
        if cumulative:
            for u, s in bucket.items():
                carry.setdefault(u, set()).update(s)
            active = carry
        else:
            active = bucket
        weights = _window_weights(active)
        when = day_of(start + k * width)
        if weights:
            weights.sort()
            out.append(WindowStats(when, len(weights), five_number(weights)))
        else:
            out.append(WindowStats(when, 0, None))
    return out


def _window_weights(sets_by_user: Mapping[str, set[str]]) -> list[float]:
    users = sorted(sets_by_user)
    n = len(users)
    if n < 2:
        return []
    sets = [sets_by_user[u] for u in users]
    sizes = [len(s) for s in sets]
    counts = _intersection_counts(sets, n)
    weights = _counts_to_weights(counts, sizes, n)
    return list(weights.values())
