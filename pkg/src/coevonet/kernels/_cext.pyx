# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Brandes edge-betweenness kernel (unweighted, undirected).

Kept in lockstep with kernels.pure: both walk sources, neighbors and the
BFS frontier in the same order so the floating-point results are
bit-identical between backends.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def edge_betweenness(int n, cnp.ndarray[cnp.int64_t, ndim=2] edges):
    """Shortest-path edge betweenness over unordered node pairs.

    `edges` is an (E, 2) array of undirected edges. Returns a float64
    array of length E, where entry e is the sum over unordered pairs
    {s, t} of the fraction of shortest s-t paths passing through edge e.
    """
    cdef Py_ssize_t m = edges.shape[0]
    bet_arr = np.zeros(m, dtype=np.float64)
    if m == 0 or n == 0:
        return bet_arr

    cdef cnp.ndarray[cnp.int64_t, ndim=1] indptr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] adj_arr = np.empty(2 * m, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] eid_arr = np.empty(2 * m, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] cursor_arr = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] queue_arr = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] dist_arr = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sigma_arr = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] delta_arr = np.empty(n, dtype=np.float64)

    cdef cnp.int64_t[:, :] E = edges
    cdef cnp.int64_t[:] indptr = indptr_arr
    cdef cnp.int64_t[:] adj = adj_arr
    cdef cnp.int64_t[:] eid = eid_arr
    cdef cnp.int64_t[:] cursor = cursor_arr
    cdef cnp.int64_t[:] queue = queue_arr
    cdef cnp.int64_t[:] dist = dist_arr
    cdef cnp.float64_t[:] sigma = sigma_arr
    cdef cnp.float64_t[:] delta = delta_arr
    cdef cnp.float64_t[:] bet = bet_arr

    cdef Py_ssize_t e, i, s, v, w, head, tail, p
    cdef double coeff, c

    for e in range(m):
        indptr[E[e, 0] + 1] += 1
        indptr[E[e, 1] + 1] += 1
    for i in range(n):
        indptr[i + 1] += indptr[i]
        cursor[i] = indptr[i]
    for e in range(m):
        v = E[e, 0]
        w = E[e, 1]
        adj[cursor[v]] = w
        eid[cursor[v]] = e
        cursor[v] += 1
        adj[cursor[w]] = v
        eid[cursor[w]] = e
        cursor[w] += 1

    for s in range(n):
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            delta[i] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                w = adj[p]
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue[tail] = w
                    tail += 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        # Nodes in reverse BFS order; neighbors one level up are the
        # shortest-path predecessors.
        for i in range(tail - 1, 0, -1):
            w = queue[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            for p in range(indptr[w], indptr[w + 1]):
                v = adj[p]
                if dist[v] == dist[w] - 1:
                    c = sigma[v] * coeff
                    bet[eid[p]] += c
                    delta[v] += c

    for e in range(m):
        bet[e] *= 0.5
    return bet_arr
