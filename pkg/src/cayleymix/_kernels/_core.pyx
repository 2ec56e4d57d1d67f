# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled BFS over a Cayley graph of a finite Abelian group.

Elements are flat mixed-radix indices; moving by a generator is done
per axis through the precomputed strides, so no index/coordinate tables
are materialised.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def bfs_distances(cnp.int64_t[::1] moduli,
                  cnp.int64_t[::1] strides,
                  cnp.int64_t[:, ::1] steps,
                  cnp.int64_t n):
    """Distances from the identity; -1 marks unreached elements.

    ``steps`` holds one row of coordinates per directed step (generators,
    plus inverses in the undirected case).
    """
    cdef cnp.ndarray[cnp.int32_t, ndim=1] dist_arr = np.full(int(n), -1, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] frontier_arr = np.empty(int(n), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] nxt_arr = np.empty(int(n), dtype=np.int64)
    cdef cnp.int64_t[::1] frontier = frontier_arr
    cdef cnp.int64_t[::1] nxt = nxt_arr

    cdef Py_ssize_t d = moduli.shape[0]
    cdef Py_ssize_t nsteps = steps.shape[0]
    cdef Py_ssize_t fsize = 1, nsize, i, g, j
    cdef cnp.int64_t x, y, c, nc, stride, m
    cdef cnp.int32_t level = 0

    dist[0] = 0
    frontier[0] = 0
    while fsize > 0:
        nsize = 0
        level += 1
        for i in range(fsize):
            x = frontier[i]
            for g in range(nsteps):
                y = x
                for j in range(d):
                    stride = strides[j]
                    m = moduli[j]
                    c = (y / stride) % m
                    nc = c + steps[g, j]
                    if nc >= m:
                        nc -= m
                    elif nc < 0:
                        nc += m
                    y += (nc - c) * stride
                if dist[y] < 0:
                    dist[y] = level
                    nxt[nsize] = y
                    nsize += 1
        frontier_arr, nxt_arr = nxt_arr, frontier_arr
        frontier = frontier_arr
        nxt = nxt_arr
        fsize = nsize
    return dist_arr
