"""Neighbor-based recommendation over interest-sharing weights, with a
temporal train/test evaluation.

Protocol: split the trace at a cutoff timestamp, compute interest-sharing
weights on the training period only, and for each user active in both
periods recommend the top-n entities owned by the user's top-k weighted
neighbors (scores = sum of owning neighbors' weights, own training
entities excluded). A user counts as a success when at least one of their
test-period entities lands in the list. The reused-only variant first
intersects the user's test entities with the training-period entity
universe and skips users left with nothing, isolating how much of the
miss rate is just brand-new content that no neighbor model could know.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping

from .errors import ColdStartError, ConfigError, EmptyInputError
from .similarity import SparseSimilarity, all_pairs
from .trace import Trace, UserProfile, build_profiles

REC_MODES = ("items", "tags")

DEFAULT_K = 20
DEFAULT_N = 10


def _rec_attr(mode: str) -> str:
    if mode not in REC_MODES:
        raise ConfigError(f"unknown recommendation mode {mode!r}; expected one of {REC_MODES}")
    return mode


@dataclass(frozen=True, slots=True)
class TemporalSplit:
    cutoff: int
    train: Trace
    test: Trace


def split(trace: Trace, cutoff: int) -> TemporalSplit:
    """Partition a trace into train (before cutoff) and test (at/after).

    The cutoff must fall strictly inside the span: after the first event
    (so train is non-empty) and no later than the last (so test is not).
    """
    lo, hi = trace.span
    if not lo < cutoff <= hi:
        raise ConfigError(
            f"cutoff {cutoff} outside the usable span ({lo}, {hi}]: "
            "train would be empty or test would be empty"
        )
    train = [a for a in trace.assignments if a.timestamp < cutoff]
    test = [a for a in trace.assignments if a.timestamp >= cutoff]
    return TemporalSplit(
        cutoff=cutoff,
        train=Trace.from_assignments(train),
        test=Trace.from_assignments(test),
    )


def quantile_cutoff(trace: Trace, q: float) -> int:
    """Timestamp of the event at time-quantile q (0 < q < 1), for CLI use.

    Returns the timestamp of the first event in the final (1-q) fraction,
    so splitting there puts about q of the events in train.
    """
    if not 0.0 < q < 1.0:
        raise ConfigError(f"quantile must be in (0, 1), got {q}")
    k = int(len(trace.assignments) * q)
    k = min(max(k, 1), len(trace.assignments) - 1)
    return trace.assignments[k].timestamp


@dataclass(frozen=True, slots=True)
class Recommendation:
    user: str
    mode: str
    ranked: tuple[tuple[str, float], ...]


def recommend(
    train_profiles: Mapping[str, UserProfile],
    sim_train: SparseSimilarity,
    user: str,
    k: int = DEFAULT_K,
    n: int = DEFAULT_N,
    mode: str = "items",
    min_weight: float = 0.0,
) -> Recommendation:
    """Top-n entities for one user from their top-k weighted neighbors.

    Neighbors are the nonzero-weight users ranked by weight (ties broken by
    user id); ``min_weight`` optionally drops neighbors below a cutoff,
    mirroring a graph threshold. Candidate entities are the neighbors'
    training entities minus the user's own; score = sum of the weights of
    the neighbors owning the entity; ties in score break by entity id.
    A user with no qualifying neighbor gets an empty ranking.
    """
    attr = _rec_attr(mode)
    if k < 1 or n < 1:
        raise ConfigError(f"k and n must be >= 1, got k={k}, n={n}")
    if user not in train_profiles:
        raise ColdStartError(f"user {user!r} has no training activity")
    neighbors = [
        (v, w) for v, w in sim_train.neighbors_of(user) if w >= min_weight and w > 0.0
    ]
    neighbors.sort(key=lambda vw: (-vw[1], vw[0]))
    del neighbors[k:]
    if not neighbors:
        return Recommendation(user=user, mode=mode, ranked=())
    own = getattr(train_profiles[user], attr)
    scores: dict[str, float] = {}
    for v, w in neighbors:
        for entity in getattr(train_profiles[v], attr):
            if entity in own:
                continue
            scores[entity] = scores.get(entity, 0.0) + w
    ranked = sorted(scores.items(), key=lambda es: (-es[1], es[0]))[:n]
    return Recommendation(user=user, mode=mode, ranked=tuple(ranked))


@dataclass(frozen=True, slots=True)
class UserOutcome:
    user: str
    hits: int
    success: bool
    reused_only_applicable: bool
    reused_only_success: bool | None


@dataclass(frozen=True, slots=True)
class EvalReport:
    users_evaluated: int
    success_rate: float
    success_rate_reused_only: float | None
    reused_only_users: int
    parameters: dict
    per_user: tuple[UserOutcome, ...]

    def as_dict(self) -> dict:
        return {
            "users_evaluated": self.users_evaluated,
            "success_rate": self.success_rate,
            "success_rate_reused_only": self.success_rate_reused_only,
            "reused_only_users": self.reused_only_users,
            "parameters": dict(self.parameters),
        }


def evaluate(
    split_result: TemporalSplit,
    k: int = DEFAULT_K,
    n: int = DEFAULT_N,
    mode: str = "items",
    sim_mode: str | None = None,
    min_weight: float = 0.0,
    threads: int = 1,
) -> EvalReport:
    """Per-user hit-rate@n over every user active in both periods.

    Cold-start (test-only) users never enter the denominator. Weights come
    from the training period only; ``sim_mode`` defaults to the dimension
    matching ``mode``. ``threads`` > 1 evaluates users concurrently; the
    aggregation is a sum of per-user outcomes, so the schedule cannot
    change any result.
    """
    attr = _rec_attr(mode)
    if sim_mode is None:
        sim_mode = "user-item" if mode == "items" else "user-tag"
    train_profiles = build_profiles(split_result.train)
    test_profiles = build_profiles(split_result.test)
    users = sorted(set(train_profiles) & set(test_profiles))
    if not users:
        raise EmptyInputError("no user is active in both train and test periods")
    if len(train_profiles) >= 2:
        sim_train = all_pairs(train_profiles, sim_mode)
    else:
        sim_train = SparseSimilarity.from_entries(sim_mode, list(train_profiles), {})
    train_universe = (
        split_result.train.items if mode == "items" else split_result.train.tags
    )

    def one(user: str) -> UserOutcome:
        rec = recommend(
            train_profiles, sim_train, user, k=k, n=n, mode=mode, min_weight=min_weight
        )
        top = {entity for entity, _ in rec.ranked}
        test_entities = getattr(test_profiles[user], attr)
        hits = len(top & test_entities)
        reused = test_entities & train_universe
        return UserOutcome(
            user=user,
            hits=hits,
            success=hits > 0,
            reused_only_applicable=bool(reused),
            reused_only_success=bool(top & reused) if reused else None,
        )

    if threads > 1:
        # Warm the shared neighbor cache before fanning out.
        sim_train.neighbors_of(users[0])
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, users))
    else:
        outcomes = [one(u) for u in users]

    successes = sum(1 for o in outcomes if o.success)
    applicable = [o for o in outcomes if o.reused_only_applicable]
    reused_successes = sum(1 for o in applicable if o.reused_only_success)
    return EvalReport(
        users_evaluated=len(users),
        success_rate=successes / len(users),
        success_rate_reused_only=(
            reused_successes / len(applicable) if applicable else None
        ),
        reused_only_users=len(applicable),
        parameters={
            "k": k,
            "n": n,
            "mode": mode,
            "sim_mode": sim_mode,
            "threshold": min_weight,
            "cutoff": split_result.cutoff,
        },
        per_user=tuple(outcomes),
    )
