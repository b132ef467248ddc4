"""Shared fixtures and brute-force reference implementations."""

from collections import deque

import numpy as np
import pytest

from coevonet.graph import DynamicNetwork


def make_network(opinions, edges, weights=None):
    """Build a DynamicNetwork from an edge list; weights default to 1."""
    opinions = np.asarray(opinions, dtype=np.float64)
    n = opinions.size
    adjacency = np.zeros((n, n))
    for idx, (a, b) in enumerate(edges):
        adjacency[a, b] = 1.0 if weights is None else weights[idx]
    return DynamicNetwork(opinions=opinions, adjacency=adjacency)


def bidirectional(pairs):
    """Expand undirected pairs into both directed edges."""
    out = []
    for a, b in pairs:
        out.append((a, b))
        out.append((b, a))
    return out


def clique_pairs(members):
    members = sorted(members)
    return [(a, b) for i, a in enumerate(members) for b in members[i + 1 :]]


def random_digraph(rng, n, p):
    """Random directed graph as (opinions, edge list)."""
    opinions = rng.integers(-2, 3, size=n).astype(float)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j and rng.random() < p
    ]
    return opinions, edges


def brute_force_edge_betweenness(n, edges):
    """Shortest-path edge betweenness by explicit path enumeration.

    For every ordered pair (s, t) each edge gets sigma_st(e)/sigma_st
    credit; unordered pairs are counted once (the sum is halved).
    Deliberately naive: BFS per source plus per-target path counting.
    """
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    index = {tuple(sorted(e)): k for k, e in enumerate(edges)}
    scores = np.zeros(len(edges))
    for s in range(n):
        dist = [-1] * n
        sigma = [0] * n
        dist[s] = 0
        sigma[s] = 1
        queue = deque([s])
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        # paths_through[v] = number of shortest s->t paths via v, per t
        for t in range(n):
            if t == s or dist[t] < 0:
                continue
            # count, for each edge, how many shortest s->t paths use it
            credit = {}
            stack = [(t, 1)]
            while stack:
                v, mult = stack.pop()
                for u in adj[v]:
                    if dist[u] == dist[v] - 1:
                        key = tuple(sorted((u, v)))
                        credit[key] = credit.get(key, 0) + mult * sigma[u]
                        stack.append((u, mult))
            for key, cnt in credit.items():
                scores[index[key]] += cnt / sigma[t] / 2.0
    return scores


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
