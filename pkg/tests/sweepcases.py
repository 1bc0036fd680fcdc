"""Deterministic randomized-sweep inputs shared across test modules."""

import random

from tagtrace import GenConfig, generate


def random_config(rng: random.Random, max_users: int = 300, max_events: int = 8000) -> GenConfig:
    """A varied but bounded generator config for randomized sweeps."""
    users = rng.randint(5, max_users)
    communities = rng.choice([1, 1, 2, 4])
    days = rng.randint(1, 40)
    events_per_day = max(1, min(rng.randint(20, 400), max_events // days))
    return GenConfig(
        seed=rng.randrange(2**32),
        users=users,
        days=days,
        events_per_day=events_per_day,
        item_reuse_p=rng.random(),
        tag_reuse_p=rng.random(),
        communities=min(communities, users),
        intra_community_item_pool=rng.choice([0, 0, 10, 50]),
        noise_p=rng.choice([0.0, 0.05, 0.2]),
    )


def random_traces(seed: int, count: int, **kwargs):
    """Deterministic list of (config, trace) pairs for sweep tests."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        cfg = random_config(rng, **kwargs)
        trace, _ = generate(cfg)
        out.append((cfg, trace))
    return out
