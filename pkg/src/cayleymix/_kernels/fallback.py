"""Pure-Python (numpy-vectorised) BFS kernel, used when the compiled
extension is unavailable."""

from __future__ import annotations

import numpy as np


def bfs_distances(moduli: np.ndarray, strides: np.ndarray, steps: np.ndarray, n: int) -> np.ndarray:
    """Level-synchronous BFS; per level all generator moves are applied to
    the whole frontier at once."""
    dist = np.full(n, -1, dtype=np.int32)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    level = 0
    d = len(moduli)
    while frontier.size:
        level += 1
        neighbours = []
        for g in range(steps.shape[0]):
            y = frontier.copy()
            for j in range(d):
                c = (y // strides[j]) % moduli[j]
                nc = (c + steps[g, j]) % moduli[j]
                y += (nc - c) * strides[j]
            neighbours.append(y)
        cand = np.unique(np.concatenate(neighbours))
        fresh = cand[dist[cand] < 0]
        dist[fresh] = level
        frontier = fresh
    return dist
