import io

import pytest

from tagtrace import (
    ConfigError,
    GenConfig,
    all_pairs,
    build_profiles,
    classify,
    daily_series,
    generate,
)
from tagtrace.synth import DEFAULT_START

DAY = 86400


def cfg(**kwargs):
    base = dict(
        seed=1, users=10, days=3, events_per_day=50, item_reuse_p=0.5, tag_reuse_p=0.5
    )
    base.update(kwargs)
    return GenConfig(**base)


@pytest.mark.parametrize(
    "bad",
    [
        {"item_reuse_p": 1.5},
        {"tag_reuse_p": -0.1},
        {"noise_p": 2.0},
        {"communities": 0},
        {"users": 3, "communities": 4},
        {"days": 0},
        {"events_per_day": 0},
        {"intra_community_item_pool": -1},
        {"start": -1},
    ],
)
def test_config_validation(bad):
    with pytest.raises(ConfigError):
        cfg(**bad)


def test_same_seed_byte_identical():
    outs = []
    for _ in range(2):
        trace, _ = generate(cfg(seed=42))
        buf = io.StringIO()
        trace.to_tsv(buf)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]
    other, _ = generate(cfg(seed=43))
    buf = io.StringIO()
    other.to_tsv(buf)
    assert buf.getvalue() != outs[0]


def test_event_count_and_ordering():
    trace, _ = generate(cfg(days=4, events_per_day=25))
    assert len(trace) == 100
    stamps = [a.timestamp for a in trace.assignments]
    assert stamps == sorted(stamps)
    assert trace.span[0] == DEFAULT_START


def test_no_reuse_means_every_item_fresh():
    trace, _ = generate(cfg(item_reuse_p=0.0, days=5))
    for record in daily_series(classify(trace), "item"):
        assert record.reused_pct == 0.0
    assert len(trace.items) == len(trace)


def test_full_reuse_single_user():
    trace, _ = generate(
        cfg(users=1, item_reuse_p=1.0, days=3, events_per_day=40)
    )
    series = daily_series(classify(trace), "item")
    assert series[0].new_count == 1  # only the very first event mints an item
    assert series[1].reused_pct == 100.0
    assert series[2].reused_pct == 100.0
    assert len(trace.items) == 1


def test_ground_truth_covers_every_user():
    config = cfg(users=20, communities=4)
    trace, truth = generate(config)
    assert set(trace.users) <= set(truth.community_of)
    assert len(truth.community_of) == 20
    assert set(truth.community_of.values()) == {0, 1, 2, 3}
    sizes = [list(truth.community_of.values()).count(g) for g in range(4)]
    assert sizes == [5, 5, 5, 5]
    assert truth.config == config


def test_ground_truth_json_round_trip():
    import json

    _, truth = generate(cfg(users=4, communities=2))
    data = json.loads(truth.to_json())
    assert data["config"]["seed"] == 1
    assert len(data["community_of"]) == 4


def test_communities_share_more_within_than_across():
    config = cfg(
        seed=5,
        users=40,
        days=20,
        events_per_day=200,
        item_reuse_p=0.6,
        communities=4,
        intra_community_item_pool=30,
        noise_p=0.05,
    )
    trace, truth = generate(config)
    sim = all_pairs(build_profiles(trace), "user-item")
    within, across = [], []
    users = sorted(trace.users)
    for i, a in enumerate(users):
        for b in users[i + 1 :]:
            w = sim.weight(a, b)
            if truth.community_of[a] == truth.community_of[b]:
                within.append(w)
            else:
                across.append(w)
    assert sum(within) / len(within) > 5 * (sum(across) / len(across) + 1e-9)


def test_start_override_shifts_timestamps():
    trace, _ = generate(cfg(start=0))
    assert trace.span[0] == 0


def test_timestamps_spread_within_each_day():
    trace, _ = generate(cfg(days=2, events_per_day=10))
    first_day = [a.timestamp - DEFAULT_START for a in trace.assignments[:10]]
    assert first_day == [e * DAY // 10 for e in range(10)]
