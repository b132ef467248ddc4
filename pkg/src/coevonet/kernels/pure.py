"""Pure-Python fallback for the compiled betweenness kernel.

A line-for-line twin of _cext.pyx: same traversal and summation order,
so both backends produce bit-identical floats.
"""

import numpy as np


def edge_betweenness(n, edges):
    """Shortest-path edge betweenness over unordered node pairs.

    `edges` is an (E, 2) int array of undirected edges. Returns a
    float64 array of length E.
    """
    m = len(edges)
    bet = np.zeros(m, dtype=np.float64)
    if m == 0 or n == 0:
        return bet

    indptr = [0] * (n + 1)
    for u, v in edges:
        indptr[u + 1] += 1
        indptr[v + 1] += 1
    for i in range(n):
        indptr[i + 1] += indptr[i]
    cursor = list(indptr[:n])
    adj = [0] * (2 * m)
    eid = [0] * (2 * m)
    for e, (u, v) in enumerate(edges):
        adj[cursor[u]] = v
        eid[cursor[u]] = e
        cursor[u] += 1
        adj[cursor[v]] = u
        eid[cursor[v]] = e
        cursor[v] += 1

    for s in range(n):
        dist = [-1] * n
        sigma = [0.0] * n
        delta = [0.0] * n
        dist[s] = 0
        sigma[s] = 1.0
        queue = [s]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            dv = dist[v]
            for p in range(indptr[v], indptr[v + 1]):
                w = adj[p]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue.append(w)
                if dist[w] == dv + 1:
                    sigma[w] += sigma[v]
        for i in range(len(queue) - 1, 0, -1):
            w = queue[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw = dist[w]
            for p in range(indptr[w], indptr[w + 1]):
                v = adj[p]
                if dist[v] == dw - 1:
                    c = sigma[v] * coeff
                    bet[eid[p]] += c
                    delta[v] += c

    bet *= 0.5
    return bet
