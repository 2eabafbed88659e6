"""Vertex welding: cluster vertex instances within a tolerance and replace each
cluster by its centroid.

Point clouds are ``(n, dim)`` float arrays. The clustering is a greedy scan in
index order; the spatial index only answers closed-ball range queries.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import ParameterError
from .sparse import ClassPartition

DEFAULT_EPSILON = 1e-6


def as_point_cloud(points) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    if p.ndim != 2:
        raise ParameterError(f"point cloud must be 2-D (n, dim), got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ParameterError("point cloud has non-finite coordinates")
    return p


def check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not (np.isfinite(epsilon) and epsilon > 0):
        raise ParameterError(f"epsilon must be a positive finite number, got {epsilon!r}")
    return epsilon


class SpatialIndex:
    """Exact Euclidean range queries over a fixed point cloud (k-d tree)."""

    def __init__(self, points):
        self.points = as_point_cloud(points)
        if len(self.points) == 0:
            raise ParameterError("cannot index an empty point cloud")
        self._tree = cKDTree(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def range_query(self, q: Sequence[float], r: float) -> list[int]:
        """Indices ``i`` with ``|points[i] - q| <= r``, ascending."""
        if r < 0:
            raise ParameterError("query radius must be non-negative")
        return sorted(self._tree.query_ball_point(np.asarray(q, dtype=float), r))

    def range_query_all(self, r: float, workers: int = 1) -> list[list[int]]:
        """Range query around every indexed point; ``workers`` threads share the work."""
        if r < 0:
            raise ParameterError("query radius must be non-negative")
        hits = self._tree.query_ball_point(self.points, r, workers=workers or 1, return_sorted=True)
        return [list(h) for h in hits]


def greedy_classes(n: int, neighbors: Callable[[int], Sequence[int]]) -> list[list[int]]:
    """Seed-order clustering: each unvisited index claims its unvisited neighbours."""
    visited = np.zeros(n, dtype=bool)
    classes = []
    for seed in range(n):
        if visited[seed]:
            continue
        members = [seed] + sorted(j for j in neighbors(seed) if j != seed and not visited[j])
        visited[members] = True
        classes.append(members)
    return classes


def centroids(points: np.ndarray, classes: Sequence[Sequence[int]]) -> np.ndarray:
    """Arithmetic mean of each class, taken as seed + mean offset so exact duplicates stay exact."""
    out = np.empty((len(classes), points.shape[1]))
    for k, c in enumerate(classes):
        seed = points[c[0]]
        out[k] = seed + (points[list(c)] - seed).mean(axis=0)
    return out


def vertex_congruence(points, epsilon: float = DEFAULT_EPSILON, threads: int | None = None):
    """Return ``(centroids, vclasses)`` for the greedy epsilon clustering of ``points``.

    Every member of a class lies within ``epsilon`` of the class seed, which is the
    smallest index in the class. Classes are ordered by seed.
    """
    epsilon = check_epsilon(epsilon)
    p = as_point_cloud(points)
    if len(p) == 0:
        raise ParameterError("cannot cluster an empty point cloud")
    index = SpatialIndex(p)
    # queries are independent, so they can run ahead of the sequential scan
    near = index.range_query_all(epsilon, workers=threads or 1)
    classes = greedy_classes(len(p), near.__getitem__)
    return centroids(p, classes), ClassPartition(tuple(map(tuple, classes)), len(p))
