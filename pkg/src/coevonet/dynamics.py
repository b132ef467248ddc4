"""One model time step: opinion diffusion with amplification, then
stochastic edge formation/breaking, then re-clustering and re-weighting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clustering import Partition, best_partition
from .graph import (
    DEFAULT_BOUNDS,
    DynamicNetwork,
    apply_cluster_weights,
    undirected_projection,
)

# Opinion band in which amplification kicks in, fitted to the survey
# data's drift away from 0 and toward the positive extreme.
DEFAULT_AMP_DOMAIN = ((-1.0, 0.0), (1.5, 2.0))

REWIRE_MODES = ("single", "all_pairs")


@dataclass(frozen=True)
class ModelParams:
    """Model constants: w, k_amp, c, alpha, beta plus the amplification
    domain (open intervals) and the closed opinion bounds.

    alpha/beta are allowed to be 0 so frozen-dynamics fixtures are
    expressible; the fitted values are strictly positive.
    """

    w: float
    k_amp: float
    c: float
    alpha: float
    beta: float
    amp_domain: tuple[tuple[float, float], ...] = DEFAULT_AMP_DOMAIN
    bounds: tuple[float, float] = DEFAULT_BOUNDS
    rewire_mode: str = "single"

    def __post_init__(self) -> None:
        if self.w < 1:
            raise ValueError(f"w must be >= 1, got {self.w}")
        if self.k_amp < 1:
            raise ValueError(f"k_amp must be >= 1, got {self.k_amp}")
        if not 0 <= self.c < 0.5:
            raise ValueError(f"c must be in [0, 0.5), got {self.c}")
        if not 0 <= self.alpha <= 1:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if not 0 <= self.beta <= 1:
            raise ValueError(f"beta must be in [0, 1], got {self.beta}")
        if self.rewire_mode not in REWIRE_MODES:
            raise ValueError(f"rewire_mode must be one of {REWIRE_MODES}")
        lo, hi = self.bounds
        for a, b in self.amp_domain:
            if not (lo <= a < b <= hi):
                raise ValueError(f"amplification interval ({a}, {b}) outside bounds")


def influence(net: DynamicNetwork, i: int, alpha: float) -> float:
    """Weighted pull of node i's friends on its opinion.

    alpha * sum_j (a_ij / sum_k a_ik) (o_j - o_i); 0 when i has no
    outgoing edges.
    """
    row = net.adjacency[i]
    total = row.sum()
    if total == 0:
        return 0.0
    return float(alpha * (row @ net.opinions - total * net.opinions[i]) / total)


def amplify(y: float, params: ModelParams) -> float:
    """Multiply by k_amp inside the amplification domain, then clamp to
    the opinion bounds. Values pushed out of the domain stay out."""
    for lo, hi in params.amp_domain:
        if lo < y < hi:
            y = params.k_amp * y
            break
    return float(min(max(y, params.bounds[0]), params.bounds[1]))


def update_opinions(net: DynamicNetwork, params: ModelParams) -> DynamicNetwork:
    """Synchronous opinion update: o_i <- amplify(o_i + influence_i),
    all influences evaluated on the incoming state."""
    a = net.adjacency
    o = net.opinions
    totals = a.sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        q = params.alpha * (a @ o - totals * o) / totals
    q[totals == 0] = 0.0
    y = o + q
    in_domain = np.zeros(net.n, dtype=bool)
    for lo, hi in params.amp_domain:
        in_domain |= (y > lo) & (y < hi)
    y = np.where(in_domain, params.k_amp * y, y)
    y = np.clip(y, params.bounds[0], params.bounds[1])
    return DynamicNetwork(y, a.copy(), net.bounds)


def _candidates_from(adjacency: np.ndarray, i: int) -> np.ndarray:
    """Nodes j with no i->j edge that are friends-of-friends of i or
    already consider i a friend, in ascending id order."""
    exists = adjacency > 0
    row = exists[i]
    two_hop = row @ exists
    reachable = two_hop | exists[:, i]
    cand = reachable & ~row
    cand[i] = False
    return np.flatnonzero(cand)


def candidate_formations(net: DynamicNetwork, i: int) -> set[int]:
    return set(_candidates_from(net.adjacency, i).tolist())


def cluster_affinity(partition: Partition, i: int, j: int, c: float) -> float:
    """Edge-formation bias: .5 + c within a cluster, .5 - c across
    clusters, neutral .5 when either endpoint is unclustered."""
    if not 0 <= c < 0.5:
        raise ValueError(f"c must be in [0, 0.5), got {c}")
    mi = _member_of(partition, i)
    mj = _member_of(partition, j)
    if mi < 0 or mj < 0:
        return 0.5
    return 0.5 + c if mi == mj else 0.5 - c


def _member_of(partition: Partition, node: int) -> int:
    for idx, cluster in enumerate(partition.clusters):
        if node in cluster:
            return idx
    return -1


def update_connections(
    net: DynamicNetwork,
    partition: Partition,
    params: ModelParams,
    rng: np.random.Generator,
) -> DynamicNetwork:
    """Stochastic rewiring: each node, in ascending id order, forms at
    most one edge and breaks at most one edge on a shared working copy.

    Formation precedes breaking; the edge a node just formed is excluded
    from its own break draw. New edges enter with weight 1 (weights are
    reapplied after re-clustering).
    """
    work = net.adjacency.copy()
    member = partition.membership(net.n)

    def affinity(i: int, j: int) -> float:
        if member[i] < 0 or member[j] < 0:
            return 0.5
        return 0.5 + params.c if member[i] == member[j] else 0.5 - params.c

    if params.rewire_mode == "all_pairs":
        return _update_connections_all_pairs(net, affinity, params, rng)

    for i in range(net.n):
        formed = -1
        cands = _candidates_from(work, i)
        if cands.size:
            j = int(cands[rng.integers(cands.size)])
            if rng.random() < params.beta * affinity(i, j):
                work[i, j] = 1.0
                formed = j
        outs = np.flatnonzero(work[i] > 0)
        if formed >= 0:
            outs = outs[outs != formed]
        if outs.size:
            j = int(outs[rng.integers(outs.size)])
            if rng.random() < params.beta * (1.0 - affinity(i, j)):
                work[i, j] = 0.0
    return DynamicNetwork(net.opinions.copy(), work, net.bounds)


def _update_connections_all_pairs(net, affinity, params, rng) -> DynamicNetwork:
    """Sensitivity-analysis mode: every candidate edge and every existing
    edge gets an independent Bernoulli trial, all from the time-t state."""
    snapshot = net.adjacency
    work = snapshot.copy()
    for i in range(net.n):
        for j in _candidates_from(snapshot, i):
            if rng.random() < params.beta * affinity(i, int(j)):
                work[i, j] = 1.0
        for j in np.flatnonzero(snapshot[i] > 0):
            if rng.random() < params.beta * (1.0 - affinity(i, int(j))):
                work[i, j] = 0.0
    return DynamicNetwork(net.opinions.copy(), work, net.bounds)


def step(
    net: DynamicNetwork,
    partition: Partition,
    params: ModelParams,
    rng: np.random.Generator,
    recluster: bool = True,
) -> tuple[DynamicNetwork, Partition]:
    """Advance one time step: opinions, then connections, then
    re-cluster the new topology and reapply intra-cluster weights."""
    net = update_opinions(net, params)
    net = update_connections(net, partition, params, rng)
    if recluster:
        partition = best_partition(undirected_projection(net))
    net = apply_cluster_weights(net, partition, params.w)
    return net, partition
