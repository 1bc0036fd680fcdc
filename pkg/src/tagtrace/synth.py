"""Deterministic synthetic trace generator with planted statistics.

The generator is not a behavioral model of real tagging; it plants known
quantities so oracles have ground truth to check against:

- Each event reuses an already-seen item with probability ``item_reuse_p``
  (tags analogously), so the empirical daily reuse fraction concentrates
  around the planted value.
- Users are split into ``communities`` equal blocks. When a per-community
  pool is configured, a user's reuse draws come from their own community's
  pool (and fresh mints fill that pool first), so members of a group come
  to share items far more than outsiders; ``noise_p`` is the per-event
  probability of escaping the community behavior and acting globally.

The RNG is ``random.Random`` (CPython's Mersenne Twister), which is
documented to produce the same sequence for the same seed across runs and
platforms; golden outputs depend on that pin and on the draw order
user, item-path, tag-path within each event.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from random import Random

from .errors import ConfigError
from .trace import TagAssignment, Trace

# 2005-01-01T00:00:00Z; day-aligned so daily series are easy to reason about.
DEFAULT_START = 1_104_537_600

_SECONDS_PER_DAY = 86400


@dataclass(frozen=True, slots=True)
class GenConfig:
    seed: int
    users: int
    days: int
    events_per_day: int
    item_reuse_p: float
    tag_reuse_p: float
    communities: int = 1
    intra_community_item_pool: int = 0
    noise_p: float = 0.0
    start: int = DEFAULT_START

    def __post_init__(self) -> None:
        for name in ("item_reuse_p", "tag_reuse_p", "noise_p"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {p}")
        if self.communities < 1:
            raise ConfigError(f"communities must be >= 1, got {self.communities}")
        if self.users < self.communities:
            raise ConfigError(
                f"users ({self.users}) must be >= communities ({self.communities})"
            )
        if self.days < 1 or self.events_per_day < 1:
            raise ConfigError("days and events_per_day must be >= 1")
        if self.intra_community_item_pool < 0:
            raise ConfigError("intra_community_item_pool must be >= 0")
        if self.start < 0:
            raise ConfigError("start must be a non-negative epoch timestamp")


@dataclass(frozen=True, slots=True)
class GroundTruth:
    community_of: dict[str, int]
    config: GenConfig

    def as_dict(self) -> dict:
        return {"community_of": dict(self.community_of), "config": asdict(self.config)}

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent, sort_keys=True)


class _EntityState:
    """Reuse state for one dimension (items or tags).

    ``seen`` is every identifier introduced so far, in introduction order;
    ``pools`` holds the per-community identifiers already minted, a prefix
    of the community's eventual pool.
    """

    __slots__ = ("prefix", "seen", "pools", "fresh_count")

    def __init__(self, prefix: str, communities: int):
        self.prefix = prefix
        self.seen: list[str] = []
        self.pools: list[list[str]] = [[] for _ in range(communities)]
        self.fresh_count = 0

    def pick(self, rng: Random, group: int, reuse_p: float, pool_size: int, noise_p: float) -> str:
        communal = pool_size > 0 and not (noise_p > 0.0 and rng.random() < noise_p)
        if self.seen and rng.random() < reuse_p:
            pool = self.pools[group]
            if communal and pool:
                return pool[rng.randrange(len(pool))]
            return self.seen[rng.randrange(len(self.seen))]
        if communal and len(self.pools[group]) < pool_size:
            name = f"c{group}{self.prefix}{len(self.pools[group])}"
            self.pools[group].append(name)
        else:
            name = f"{self.prefix}{self.fresh_count}"
            self.fresh_count += 1
        self.seen.append(name)
        return name


def generate(cfg: GenConfig) -> tuple[Trace, GroundTruth]:
    """Produce a trace and its ground truth, byte-stable for a fixed seed.

    Event timestamps step evenly through each day, so any events_per_day
    up to 86400 yields strictly increasing timestamps and the trace length
    is exactly days * events_per_day.
    """
    rng = Random(cfg.seed)
    width = len(str(cfg.users - 1)) if cfg.users > 1 else 1
    names = [f"u{i:0{width}d}" for i in range(cfg.users)]
    group_of = [i * cfg.communities // cfg.users for i in range(cfg.users)]
    items = _EntityState("i", cfg.communities)
    tags = _EntityState("t", cfg.communities)
    assignments: list[TagAssignment] = []
    seq = 0
    for d in range(cfg.days):
        day_start = cfg.start + d * _SECONDS_PER_DAY
        for e in range(cfg.events_per_day):
            ts = day_start + (e * _SECONDS_PER_DAY) // cfg.events_per_day
            ui = rng.randrange(cfg.users)
            g = group_of[ui]
            item = items.pick(
                rng, g, cfg.item_reuse_p, cfg.intra_community_item_pool, cfg.noise_p
            )
            tag = tags.pick(
                rng, g, cfg.tag_reuse_p, cfg.intra_community_item_pool, cfg.noise_p
            )
            assignments.append(TagAssignment(names[ui], tag, item, ts, seq))
            seq += 1
    truth = GroundTruth(
        community_of={names[i]: group_of[i] for i in range(cfg.users)},
        config=cfg,
    )
    return Trace.from_assignments(assignments), truth
