"""Per-cluster observables and their per-time-step averages."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import Partition
from .graph import DynamicNetwork


@dataclass(frozen=True)
class MetricsRow:
    """Cluster-averaged observables at one time step.

    All averages are unweighted means over clusters and are None when
    the partition has no clusters (rows are kept, not dropped, so time
    series stay uniform in length).
    """

    t: int
    avg_cluster_opinion: float | None
    avg_opinion_spread: float | None
    avg_inner_connectivity: float | None
    avg_cluster_size: float | None
    cluster_count: int

    def is_defined(self) -> bool:
        return self.cluster_count > 0


def cluster_opinion(net: DynamicNetwork, cluster) -> float:
    """Mean opinion of the cluster's members."""
    idx = sorted(cluster)
    if not idx:
        raise ValueError("cluster must be non-empty")
    return float(np.mean(net.opinions[idx]))


def opinion_spread(net: DynamicNetwork, cluster) -> float:
    """Mean absolute deviation of member opinions from the cluster opinion."""
    idx = sorted(cluster)
    if not idx:
        raise ValueError("cluster must be non-empty")
    ops = net.opinions[idx]
    return float(np.mean(np.abs(ops - np.mean(ops))))


def inner_connectivity(net: DynamicNetwork, cluster) -> float:
    """Directed edge density inside the cluster: |E| / (k(k-1))."""
    idx = sorted(cluster)
    k = len(idx)
    if k <= 1:
        raise ValueError("inner connectivity needs a cluster of size > 1")
    sub = net.adjacency[np.ix_(idx, idx)]
    return float(np.count_nonzero(sub)) / (k * (k - 1))


def metrics_row(net: DynamicNetwork, partition: Partition, t: int) -> MetricsRow:
    """Unweighted means of the per-cluster metrics over all clusters."""
    if partition.cluster_count() == 0:
        return MetricsRow(t, None, None, None, None, 0)
    opinions = [cluster_opinion(net, c) for c in partition.clusters]
    spreads = [opinion_spread(net, c) for c in partition.clusters]
    conns = [inner_connectivity(net, c) for c in partition.clusters]
    sizes = [len(c) for c in partition.clusters]
    return MetricsRow(
        t=t,
        avg_cluster_opinion=float(np.mean(opinions)),
        avg_opinion_spread=float(np.mean(spreads)),
        avg_inner_connectivity=float(np.mean(conns)),
        avg_cluster_size=float(np.mean(sizes)),
        cluster_count=len(sizes),
    )
