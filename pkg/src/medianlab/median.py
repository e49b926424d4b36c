"""Median points and brute-force median-graph verification."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import CapExceeded, NotMedian
from .graphs import ExplicitGraph, Graph, _bfs, _require, bfs_distance


@dataclass(frozen=True)
class MedianReport:
    is_median: bool
    witness: tuple | None = None
    median_count: int | None = None

    def __bool__(self):
        return self.is_median


def distance_matrix(g: ExplicitGraph) -> np.ndarray:
    dist = g.distances()
    vs = g.vertices
    return np.array([[dist[u][v] for v in vs] for u in vs], dtype=np.int32)


def median_counts(g: ExplicitGraph) -> np.ndarray:
    """``counts[i, j, k]`` = number of vertices m with d-additivity on all three pairs."""
    D = distance_matrix(g)
    # between[i, j, m]: m lies on a geodesic from i to j
    between = (D[:, None, :] + D[None, :, :]) == D[:, :, None]
    n = len(g.vertices)
    counts = np.empty((n, n, n), dtype=np.int32)
    b = between.astype(np.int32)
    for i in range(n):
        # counts[i, j, k] = sum_m b[i,j,m] * b[j,k,m] * b[i,k,m]
        counts[i] = np.einsum("jm,jkm,km->jk", b[i], b, b[i])
    return counts


def check_median(g: ExplicitGraph) -> MedianReport:
    """Decide medianness of a finite graph by scanning every vertex triple.

    The witness, if any, is the first triple ``i < j < k`` (in vertex
    order) whose number of medians differs from one. Triples with a
    repeated vertex always have exactly one median and are skipped.
    """
    if "median_report" in g._cache:
        return g._cache["median_report"]
    counts = median_counts(g)
    n = len(g.vertices)
    report = MedianReport(True)
    for i, j, k in combinations(range(n), 3):
        c = int(counts[i, j, k])
        if c != 1:
            vs = g.vertices
            report = MedianReport(False, (vs[i], vs[j], vs[k]), c)
            break
    g._cache["median_report"] = report
    return report


def is_bipartite(g: ExplicitGraph) -> bool:
    dist = _bfs(g, g.base_vertex)
    return all((dist[u] - dist[v]) % 2 == 1 for u, v in g.edges)


def has_triangle(g: ExplicitGraph) -> bool:
    for u, v in g.edges:
        if set(g.neighbors(u)) & set(g.neighbors(v)):
            return True
    return False


def median(g: Graph, x1, x2, x3, radius_cap: int | None = None):
    """The unique vertex m on geodesics between each pair of x1, x2, x3.

    On providers candidates are drawn from the ball around each input whose
    radius is its smaller distance to the other two; all three pairwise
    distances must be at most ``radius_cap``.
    """
    _require(g, x1, x2, x3)
    if isinstance(g, ExplicitGraph) and radius_cap is None:
        dist = g.distances()
        d1, d2, d3 = dist[x1], dist[x2], dist[x3]
        d12, d13, d23 = d1[x2], d1[x3], d2[x3]
    else:
        if radius_cap is None:
            raise ValueError("radius_cap is required for lazily generated graphs")
        d12 = bfs_distance(g, x1, x2, radius_cap)
        d13 = bfs_distance(g, x1, x3, radius_cap)
        d23 = bfs_distance(g, x2, x3, radius_cap)
        d1 = _bfs(g, x1, min(d12, d13))
        d2 = _bfs(g, x2, min(d12, d23))
        d3 = _bfs(g, x3, min(d13, d23))
    found = [
        m
        for m in d1
        if m in d2
        and m in d3
        and d1[m] + d2[m] == d12
        and d1[m] + d3[m] == d13
        and d2[m] + d3[m] == d23
    ]
    if len(found) != 1:
        raise NotMedian(f"triple has {len(found)} medians")
    return found[0]
