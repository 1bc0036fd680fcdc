"""Thresholded interest-sharing graph and its topology.

Users are nodes; an edge joins two users whose interest-sharing weight is
at least the threshold (closed cutoff). Every user of the trace stays in
the node set whatever its degree, so isolated users remain countable.

Topology conventions:

- Local clustering c_v = triangles(v) / C(deg(v), 2) is defined only for
  deg(v) >= 2. The headline averages skip undefined nodes; companion
  "zeroed" averages count undefined nodes as 0, since published community
  figures rarely say which convention they used.
- The giant is the single largest component (first by size, then by
  smallest member, when tied). "Small components" are the non-singleton,
  non-giant ones.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ConfigError
from .similarity import SparseSimilarity
from .stats import mean


@dataclass(frozen=True)
class InterestGraph:
    mode: str
    threshold: float
    nodes: tuple[str, ...]
    edges: dict[tuple[str, str], float]
    adjacency: dict[str, frozenset[str]]

    def degree(self, user: str) -> int:
        return len(self.adjacency[user])

    def degrees(self) -> dict[str, int]:
        return {u: len(self.adjacency[u]) for u in self.nodes}


def build_graph(
    sim: SparseSimilarity, all_users: Iterable[str], threshold: float
) -> InterestGraph:
    """Filter a similarity structure down to edges with weight >= threshold.

    ``all_users`` fixes the node set (normally the trace's full user set);
    a nonpositive threshold is rejected because it would imply the dense
    zero-weight pair universe.
    """
    if not threshold > 0.0:
        raise ConfigError(f"threshold must be > 0, got {threshold}")
    nodes = tuple(sorted(set(all_users)))
    node_set = set(nodes)
    edges: dict[tuple[str, str], float] = {}
    adj: dict[str, set[str]] = {u: set() for u in nodes}
    for a, b, w in sim.pairs():
        if w < threshold:
            continue
        if a not in node_set or b not in node_set:
            raise ConfigError(
                f"edge ({a!r}, {b!r}) references a user outside the node set"
            )
        edges[(a, b)] = w
        adj[a].add(b)
        adj[b].add(a)
    return InterestGraph(
        mode=sim.mode,
        threshold=threshold,
        nodes=nodes,
        edges=edges,
        adjacency={u: frozenset(s) for u, s in adj.items()},
    )


@dataclass(frozen=True)
class TopologyReport:
    nodes: int
    edges: int
    threshold: float
    mode: str
    isolated_fraction: float
    components: list[tuple[int, int]]
    component_count: int
    giant_size: int
    small_component_fraction: float
    avg_clustering_all: float | None
    avg_clustering_core: float | None
    avg_clustering_all_zeroed: float
    avg_clustering_core_zeroed: float

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "threshold": self.threshold,
            "mode": self.mode,
            "isolated_fraction": self.isolated_fraction,
            "components": [list(pair) for pair in self.components],
            "component_count": self.component_count,
            "giant_size": self.giant_size,
            "small_component_fraction": self.small_component_fraction,
            "avg_clustering_all": self.avg_clustering_all,
            "avg_clustering_core": self.avg_clustering_core,
            "avg_clustering_all_zeroed": self.avg_clustering_all_zeroed,
            "avg_clustering_core_zeroed": self.avg_clustering_core_zeroed,
        }


def _components(g: InterestGraph) -> list[list[str]]:
    """Connected components via BFS, each as a sorted node list."""
    seen: set[str] = set()
    out: list[list[str]] = []
    for start in g.nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        comp.sort()
        out.append(comp)
    return out


def _triangles(g: InterestGraph) -> dict[str, int]:
    """Per-node triangle counts.

    Every triangle is met once per edge, each time crediting the opposite
    vertex, so each vertex ends with exactly the triangles through it.
    """
    tri = {u: 0 for u in g.nodes}
    for a, b in g.edges:
        na, nb = g.adjacency[a], g.adjacency[b]
        if len(nb) < len(na):
            na, nb = nb, na
        for w in na:
            if w in nb:
                tri[w] += 1
    return tri


def topology(g: InterestGraph) -> TopologyReport:
    n = len(g.nodes)
    comps = _components(g)
    comps.sort(key=lambda c: (-len(c), c[0]))
    giant = comps[0]
    giant_size = len(giant)
    small_nodes = sum(len(c) for c in comps[1:] if len(c) > 1)
    isolated = sum(1 for u in g.nodes if not g.adjacency[u])

    histogram: dict[int, int] = {}
    for c in comps:
        histogram[len(c)] = histogram.get(len(c), 0) + 1
    components = sorted(histogram.items(), key=lambda kv: -kv[0])

    tri = _triangles(g)
    local: dict[str, float] = {}
    for u in g.nodes:
        d = len(g.adjacency[u])
        if d >= 2:
            local[u] = tri[u] / (d * (d - 1) // 2)

    defined_all = list(local.values())
    defined_core = [local[u] for u in giant if u in local]
    zeroed_all = [local.get(u, 0.0) for u in g.nodes]
    zeroed_core = [local.get(u, 0.0) for u in giant]

    return TopologyReport(
        nodes=n,
        edges=len(g.edges),
        threshold=g.threshold,
        mode=g.mode,
        isolated_fraction=isolated / n,
        components=components,
        component_count=len(comps),
        giant_size=giant_size,
        small_component_fraction=small_nodes / n,
        avg_clustering_all=mean(defined_all) if defined_all else None,
        avg_clustering_core=mean(defined_core) if defined_core else None,
        avg_clustering_all_zeroed=mean(zeroed_all),
        avg_clustering_core_zeroed=mean(zeroed_core),
    )


def knee_threshold(cdf_points: Sequence[tuple[float, float]]) -> float:
    """Threshold at the knee of a CDF curve.

    The knee is the sampled point farthest (perpendicular) from the chord
    joining the curve's endpoints, with both axes normalized to [0, 1].
    Ties go to the smaller threshold.
    """
    if len(cdf_points) < 3:
        raise ConfigError("knee detection needs at least 3 CDF points")
    (x0, y0), (x1, y1) = cdf_points[0], cdf_points[-1]
    if x1 <= x0 or y1 <= y0:
        raise ConfigError("degenerate CDF: no spread along one axis")
    best_t, best_d = cdf_points[0][0], -1.0
    for t, p in cdf_points:
        xn = (t - x0) / (x1 - x0)
        yn = (p - y0) / (y1 - y0)
        d = abs(xn - yn) / math.sqrt(2.0)
        if d > best_d:
            best_t, best_d = t, d
    return best_t
