import random

import pytest

from tagtrace import (
    ConfigError,
    SparseSimilarity,
    build_graph,
    knee_threshold,
    topology,
)
from tagtrace.graph import _triangles

from oracles import bfs_components, matrix_triangles


def graph_from(entries, users, threshold):
    sim = SparseSimilarity.from_entries("user-item", users, entries)
    return build_graph(sim, users, threshold)


def test_threshold_filters_edges():
    g = graph_from({("A", "B"): 0.4, ("B", "C"): 0.02}, ["A", "B", "C", "D"], 0.05)
    assert set(g.edges) == {("A", "B")}
    assert g.degree("C") == 0 and g.degree("D") == 0
    report = topology(g)
    assert report.isolated_fraction == 0.5
    assert report.giant_size == 2


def test_threshold_is_closed():
    g = graph_from({("A", "B"): 0.05}, ["A", "B"], 0.05)
    assert ("A", "B") in g.edges


def test_nonpositive_threshold_rejected():
    sim = SparseSimilarity.from_entries("user-item", ["a", "b"], {("a", "b"): 0.5})
    for bad in (0.0, -0.1):
        with pytest.raises(ConfigError):
            build_graph(sim, ["a", "b"], bad)


def test_edgeless_graph():
    g = graph_from({("A", "B"): 0.1}, ["A", "B", "C"], 0.5)
    report = topology(g)
    assert report.edges == 0
    assert report.isolated_fraction == 1.0
    assert report.giant_size == 1
    assert report.small_component_fraction == 0.0
    assert report.avg_clustering_all is None
    assert report.avg_clustering_all_zeroed == 0.0


def test_triangle_plus_isolated():
    g = graph_from(
        {("A", "B"): 0.5, ("B", "C"): 0.5, ("A", "C"): 0.5},
        ["A", "B", "C", "D"],
        0.1,
    )
    report = topology(g)
    assert report.components == [(3, 1), (1, 1)]
    assert report.component_count == 2
    assert report.isolated_fraction == 0.25
    assert report.avg_clustering_all == 1.0
    assert report.avg_clustering_core == 1.0
    assert report.avg_clustering_all_zeroed == 0.75
    assert report.small_component_fraction == 0.0


def test_path_clustering_zero():
    g = graph_from({("A", "B"): 0.5, ("B", "C"): 0.5}, ["A", "B", "C"], 0.1)
    report = topology(g)
    # Only B has degree >= 2 and it closes no triangle.
    assert report.avg_clustering_all == 0.0
    assert report.avg_clustering_core == 0.0


def test_complete_graph_clustering_exactly_one():
    users = [f"u{k}" for k in range(6)]
    entries = {
        (users[i], users[j]): 0.9 for i in range(6) for j in range(i + 1, 6)
    }
    report = topology(graph_from(entries, users, 0.5))
    assert report.avg_clustering_all == 1.0
    assert report.avg_clustering_core_zeroed == 1.0
    assert report.giant_size == 6


def test_small_component_accounting():
    # Giant of 4, one pair, two singletons: 8 nodes total.
    users = [f"u{k}" for k in range(8)]
    entries = {
        ("u0", "u1"): 0.5,
        ("u1", "u2"): 0.5,
        ("u2", "u3"): 0.5,
        ("u4", "u5"): 0.5,
    }
    g = graph_from(entries, users, 0.1)
    report = topology(g)
    assert report.giant_size == 4
    assert report.small_component_fraction == 2 / 8
    assert report.isolated_fraction == 2 / 8
    total = report.isolated_fraction + report.small_component_fraction
    assert total + report.giant_size / report.nodes == 1.0


def test_component_sizes_sum_to_nodes():
    rng = random.Random(55)
    users = [f"n{k}" for k in range(40)]
    entries = {}
    for i in range(40):
        for j in range(i + 1, 40):
            if rng.random() < 0.05:
                entries[(users[i], users[j])] = 0.5
    report = topology(graph_from(entries, users, 0.1))
    assert sum(size * count for size, count in report.components) == 40


def test_monotone_under_threshold():
    rng = random.Random(56)
    users = [f"n{k}" for k in range(30)]
    entries = {}
    for i in range(30):
        for j in range(i + 1, 30):
            if rng.random() < 0.3:
                entries[(users[i], users[j])] = rng.random() * 0.99 + 0.01
    sim = SparseSimilarity.from_entries("user-item", users, entries)
    prev_edges, prev_isolated = None, None
    for threshold in (0.05, 0.2, 0.5, 0.8):
        report = topology(build_graph(sim, users, threshold))
        if prev_edges is not None:
            assert report.edges <= prev_edges
            assert report.isolated_fraction >= prev_isolated
        prev_edges, prev_isolated = report.edges, report.isolated_fraction


def test_relabeling_invariance():
    rng = random.Random(57)
    users = [f"n{k}" for k in range(20)]
    entries = {}
    for i in range(20):
        for j in range(i + 1, 20):
            if rng.random() < 0.25:
                entries[(users[i], users[j])] = 0.6
    mapping = {u: f"renamed-{ord(u[0]) * 100 + k}" for k, u in enumerate(reversed(users))}
    renamed = {(mapping[a], mapping[b]): w for (a, b), w in entries.items()}
    r1 = topology(graph_from(entries, users, 0.1))
    r2 = topology(graph_from(renamed, list(mapping.values()), 0.1))
    for field in (
        "isolated_fraction",
        "components",
        "giant_size",
        "small_component_fraction",
        "avg_clustering_all",
        "avg_clustering_all_zeroed",
    ):
        assert getattr(r1, field) == getattr(r2, field)


def test_triangles_and_components_match_oracles():
    rng = random.Random(58)
    for _ in range(10):
        n = rng.randint(5, 80)
        users = [f"n{k}" for k in range(n)]
        p = rng.uniform(0.02, 0.3)
        entries = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    entries[(users[i], users[j])] = 0.5
        g = graph_from(entries, users, 0.1)
        assert _triangles(g) == matrix_triangles(users, list(g.edges))
        sizes = sorted(
            (size for size, count in topology(g).components for _ in range(count)),
            reverse=True,
        )
        assert sizes == bfs_components(users, list(g.edges))


def test_knee_detection_on_sharp_bend():
    # Flat CDF that jumps at 0.1 and saturates: the knee sits at the bend.
    points = [(t / 100, 0.05 + 0.9 * min(1.0, max(0.0, (t / 100) / 0.1))) for t in range(101)]
    points[-1] = (1.0, 1.0)
    knee = knee_threshold(points)
    assert 0.05 <= knee <= 0.15


def test_knee_validation():
    with pytest.raises(ConfigError):
        knee_threshold([(0.0, 0.0), (1.0, 1.0)])
    with pytest.raises(ConfigError):
        knee_threshold([(0.5, 0.2), (0.5, 0.2), (0.5, 0.2)])


def test_edge_outside_node_set_rejected():
    sim = SparseSimilarity.from_entries("user-item", ["a", "b"], {("a", "b"): 0.5})
    with pytest.raises(ConfigError):
        build_graph(sim, ["a"], 0.1)
