"""Community detection via iterative edge-betweenness removal.

Candidate partitions are the connected components observed after each
successive removal of the highest-betweenness edge; the winner is the
candidate with the highest average per-cluster quality. Components of
size <= 2 never count as clusters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import UndirectedGraph

MIN_CLUSTER_SIZE = 3
# A single cluster holding more than this fraction of all nodes is the
# degenerate "whole connected graph" candidate (its quality is 1.0 by
# construction) and is skipped unless nothing else is available.
TRIVIAL_CLUSTER_FRACTION = 0.9


@dataclass(frozen=True)
class Partition:
    """Disjoint clusters (each of size > 2) plus the unclustered leftovers."""

    clusters: tuple[frozenset[int], ...]
    unclustered: frozenset[int]
    quality: float | None

    def membership(self, n: int) -> np.ndarray:
        """Cluster index per node, -1 for unclustered."""
        member = np.full(n, -1, dtype=np.int64)
        for idx, cluster in enumerate(self.clusters):
            for node in cluster:
                member[node] = idx
        return member

    def cluster_count(self) -> int:
        return len(self.clusters)


def all_unclustered(n: int) -> Partition:
    return Partition((), frozenset(range(n)), None)


def cluster_quality(graph: UndirectedGraph, members) -> float:
    """Internal-vs-boundary edge ratio deg_int / (deg_int + deg_ext).

    deg_int counts edges with both endpoints in `members`, deg_ext those
    with exactly one. Returns 0 when the group touches no edges.
    """
    members = set(members)
    if not members:
        raise ValueError("members must be non-empty")
    deg_int = 0
    deg_ext = 0
    for u, v in graph.edges:
        inside = (u in members) + (v in members)
        if inside == 2:
            deg_int += 1
        elif inside == 1:
            deg_ext += 1
    if deg_int + deg_ext == 0:
        return 0.0
    return deg_int / (deg_int + deg_ext)


def _removal_order(graph: UndirectedGraph) -> list[tuple[int, int]]:
    """Edges in the order Girvan-Newman removes them.

    Betweenness is recomputed after every removal; ties go to the
    lexicographically smallest edge (the edge array stays sorted, so the
    first maximum wins).
    """
    arr = np.array(sorted(graph.edges), dtype=np.int64).reshape(-1, 2)
    alive = np.ones(len(arr), dtype=bool)
    order = []
    for _ in range(len(arr)):
        live_idx = np.flatnonzero(alive)
        bet = kernels.edge_betweenness(graph.n, arr[live_idx])
        victim = live_idx[int(np.argmax(bet))]
        order.append((int(arr[victim, 0]), int(arr[victim, 1])))
        alive[victim] = False
    return order


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def _labels_per_candidate(n: int, order) -> list[tuple[list[int], bool]]:
    """(component labels, changed) after r removals, for r = 0..len(order).

    Built by adding removed edges back in reverse order onto a
    union-find, which is much cheaper than recomputing components from
    scratch for every prefix. `changed` marks prefixes whose components
    differ from the next-longer prefix (the final, fully removed state
    counts as changed).
    """
    uf = _UnionFind(n)
    out = [([uf.find(i) for i in range(n)], True)]
    for u, v in reversed(order):
        merged = uf.union(u, v)
        out.append(([uf.find(i) for i in range(n)] if merged else out[-1][0], merged))
    out.reverse()
    return out


def _score_labels(graph: UndirectedGraph, labels) -> tuple[float | None, dict]:
    """Average quality over size->2 components, plus the component map."""
    groups: dict[int, list[int]] = {}
    for node, root in enumerate(labels):
        groups.setdefault(root, []).append(node)
    cluster_roots = [r for r, nodes in groups.items() if len(nodes) >= MIN_CLUSTER_SIZE]
    if not cluster_roots:
        return None, groups
    deg_int = dict.fromkeys(cluster_roots, 0)
    deg_ext = dict.fromkeys(cluster_roots, 0)
    for u, v in graph.edges:
        ru, rv = labels[u], labels[v]
        if ru == rv:
            if ru in deg_int:
                deg_int[ru] += 1
        else:
            if ru in deg_ext:
                deg_ext[ru] += 1
            if rv in deg_ext:
                deg_ext[rv] += 1
    total = 0.0
    for r in cluster_roots:
        edges = deg_int[r] + deg_ext[r]
        total += deg_int[r] / edges if edges else 0.0
    return total / len(cluster_roots), groups


def _to_partition(graph: UndirectedGraph, quality, groups) -> Partition:
    clusters = tuple(
        frozenset(nodes)
        for _, nodes in sorted(
            ((min(nodes), nodes) for nodes in groups.values() if len(nodes) >= MIN_CLUSTER_SIZE)
        )
    )
    if not clusters:
        return all_unclustered(graph.n)
    clustered = set().union(*clusters)
    return Partition(clusters, frozenset(range(graph.n)) - clustered, quality)


def girvan_newman_partitions(graph: UndirectedGraph):
    """Candidate partitions after 0, 1, ... removals (one per prefix)."""
    order = _removal_order(graph)
    for labels, _changed in _labels_per_candidate(graph.n, order):
        quality, groups = _score_labels(graph, labels)
        yield _to_partition(graph, quality, groups)


def _is_trivial_groups(groups, n: int, trivial_fraction: float) -> bool:
    sizes = [len(nodes) for nodes in groups.values() if len(nodes) >= MIN_CLUSTER_SIZE]
    return len(sizes) == 1 and sizes[0] > trivial_fraction * n


def best_partition(
    graph: UndirectedGraph, trivial_fraction: float = TRIVIAL_CLUSTER_FRACTION
) -> Partition:
    """Highest-average-quality Girvan-Newman candidate.

    A candidate that is one near-whole-graph cluster (> trivial_fraction
    of nodes) only wins if no other candidate has clusters at all; a
    connected graph would otherwise never split, since the whole graph
    has no external edges and scores a perfect 1.0. Ties go to the
    candidate with fewer removals.
    """
    order = _removal_order(graph)
    best = None  # (quality, groups)
    best_trivial = None
    for labels, changed in _labels_per_candidate(graph.n, order):
        if not changed:  # identical components as the previous prefix
            continue
        quality, groups = _score_labels(graph, labels)
        if quality is None:
            continue
        if _is_trivial_groups(groups, graph.n, trivial_fraction):
            if best_trivial is None or quality > best_trivial[0]:
                best_trivial = (quality, groups)
        elif best is None or quality > best[0]:
            best = (quality, groups)
    winner = best if best is not None else best_trivial
    if winner is None:
        return all_unclustered(graph.n)
    return _to_partition(graph, winner[0], winner[1])
