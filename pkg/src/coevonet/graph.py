"""Directed network state: nodes, opinions, weighted adjacency.

Nodes are dense integer ids 0..n-1. The adjacency matrix is stored
densely (n is at most a few hundred); entries are 0 (no edge), 1
(inter-cluster edge) or w >= 1 (intra-cluster edge).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_BOUNDS = (-2.0, 2.0)


@dataclass(frozen=True)
class UndirectedGraph:
    """Unweighted undirected graph as a lexicographically sorted edge list."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency_sets(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs


@dataclass
class DynamicNetwork:
    """One time-step snapshot of the coevolving network.

    Treated as an immutable value once shared: the step functions in
    `dynamics` return successor states instead of mutating in place.
    """

    opinions: np.ndarray
    adjacency: np.ndarray
    bounds: tuple[float, float] = DEFAULT_BOUNDS

    def __post_init__(self) -> None:
        self.opinions = np.asarray(self.opinions, dtype=np.float64)
        self.adjacency = np.asarray(self.adjacency, dtype=np.float64)
        n = self.opinions.shape[0]
        if self.adjacency.shape != (n, n):
            raise ValueError(
                f"adjacency shape {self.adjacency.shape} does not match {n} opinions"
            )
        if np.any(np.diagonal(self.adjacency) != 0.0):
            raise ValueError("self-edges are not allowed (nonzero diagonal)")
        lo, hi = self.bounds
        if np.any(self.opinions < lo) or np.any(self.opinions > hi):
            raise ValueError(f"opinions outside bounds [{lo}, {hi}]")

    @property
    def n(self) -> int:
        return self.opinions.shape[0]

    def copy(self) -> DynamicNetwork:
        return DynamicNetwork(
            self.opinions.copy(), self.adjacency.copy(), self.bounds
        )

    def directed_edge_count(self) -> int:
        return int(np.count_nonzero(self.adjacency))


def undirected_projection(net: DynamicNetwork) -> UndirectedGraph:
    """Undirected graph with edge {i,j} iff both i->j and j->i exist."""
    a = net.adjacency
    both = (a > 0) & (a.T > 0)
    iu, ju = np.nonzero(np.triu(both, k=1))
    edges = tuple(zip(iu.tolist(), ju.tolist()))
    return UndirectedGraph(net.n, edges)


def out_weight_sum(net: DynamicNetwork, i: int) -> float:
    """Sum of outgoing edge weights of node i (0 for an out-isolated node)."""
    return float(net.adjacency[i].sum())


def apply_cluster_weights(net: DynamicNetwork, partition, w: float) -> DynamicNetwork:
    """Reweight edges: w inside a shared cluster, 1 everywhere else.

    Unclustered endpoints never share a cluster, so their edges get
    weight 1. The zero/nonzero support is unchanged.
    """
    if w < 1:
        raise ValueError(f"intra-cluster weight must be >= 1, got {w}")
    member = partition.membership(net.n)
    same = (member[:, None] >= 0) & (member[:, None] == member[None, :])
    support = net.adjacency > 0
    adjacency = np.where(support, np.where(same, w, 1.0), 0.0)
    return DynamicNetwork(net.opinions.copy(), adjacency, net.bounds)
