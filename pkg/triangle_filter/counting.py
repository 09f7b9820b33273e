"""
Broken-Triangle Counting

A triangle with sides sorted as d1 ≤ d2 ≤ d3 is broken when d1 + d2 < d3.
Exact mode walks every unordered triple and charges a broken triangle to all
three of its edges. Sampled mode draws a fixed number of third vertices per
edge and charges only the edge that drew them, so ``tested`` stays exact.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from metric_core import DistanceMatrix

from .models import TriangleCounts

logger = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-9
MIN_TRIANGLES_PER_EDGE = 45


def is_broken(d1: float, d2: float, d3: float, rel_tol: float = DEFAULT_REL_TOL) -> bool:
    """True iff the two shorter sides sum to less than the longest, beyond rel_tol."""
    if d1 < 0 or d2 < 0 or d3 < 0:
        raise ValueError(f"Triangle sides must be nonnegative, got ({d1}, {d2}, {d3})")
    a, b, c = sorted((d1, d2, d3))
    return a + b < c * (1.0 - rel_tol)


def broken_sides(x: np.ndarray, y: np.ndarray, z: np.ndarray, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Element-wise ``is_broken`` over broadcast arrays of sides."""
    sides = np.sort(np.stack(np.broadcast_arrays(x, y, z)), axis=0)
    return sides[0] + sides[1] < sides[2] * (1.0 - rel_tol)


def _require_triangles(D: DistanceMatrix):
    if D.n < 3:
        raise ValueError(f"Triangle counting needs N ≥ 3 elements, got N={D.n}")


def count_broken_exact(D: DistanceMatrix, rel_tol: float = DEFAULT_REL_TOL) -> TriangleCounts:
    """
    Count broken triangles over all C(N, 3) triples.

    Runs in O(N³) time and O(N²) memory: for each apex i the triples
    i < j < k are tested as one N×N block.
    """
    _require_triangles(D)
    n = D.n
    values = D.values
    upper = np.zeros((n, n), dtype=np.int64)

    for i in range(n - 2):
        rest = values[i, i + 1:]
        block = values[i + 1:, i + 1:]
        broken = broken_sides(rest[:, None], rest[None, :], block, rel_tol)
        broken = np.triu(broken, k=1)
        if not broken.any():
            continue
        # edge (i, j) collects over k, edge (i, k) over j, edge (j, k) directly
        upper[i, i + 1:] += broken.sum(axis=1) + broken.sum(axis=0)
        upper[i + 1:, i + 1:] += broken

    count = upper + upper.T
    tested = np.full((n, n), n - 2, dtype=np.int64)
    np.fill_diagonal(tested, 0)
    logger.debug(f"Exact counting: N={n}, {int(upper.sum())} edge-triangle incidences broken")
    return TriangleCounts(count=count, tested=tested)


def edge_rng(seed: int, i: int, j: int) -> np.random.Generator:
    """Generator for edge (i, j); depends only on (seed, i, j), never on schedule."""
    return np.random.default_rng([seed, i, j])


def count_broken_sampled(
    D: DistanceMatrix,
    triangles_per_edge: int,
    seed: int = 0,
    rel_tol: float = DEFAULT_REL_TOL,
) -> TriangleCounts:
    """
    Count broken triangles from a per-edge sample of third vertices.

    Each edge (i, j) draws min(triangles_per_edge, N − 2) distinct third
    vertices. With full sampling the counts equal ``count_broken_exact``.
    """
    _require_triangles(D)
    if triangles_per_edge < 1:
        raise ValueError(f"triangles_per_edge must be ≥ 1, got {triangles_per_edge}")

    n = D.n
    values = D.values
    k = min(triangles_per_edge, n - 2)
    count = np.zeros((n, n), dtype=np.int64)
    tested = np.zeros((n, n), dtype=np.int64)
    everyone = np.arange(n)

    for i in range(n - 1):
        for j in range(i + 1, n):
            others = everyone[(everyone != i) & (everyone != j)]
            third = edge_rng(seed, i, j).choice(others, size=k, replace=False)
            broken = broken_sides(values[i, j], values[i, third], values[j, third], rel_tol)
            count[i, j] = count[j, i] = int(np.count_nonzero(broken))
            tested[i, j] = tested[j, i] = k

    logger.debug(f"Sampled counting: N={n}, {k} triangles per edge, seed={seed}")
    return TriangleCounts(count=count, tested=tested)


def default_triangles_per_edge(n: int, expected_outliers: int = 0) -> int:
    """min(N − 2, max(45, 2 × expected outliers / N)), at least 1."""
    wanted = max(MIN_TRIANGLES_PER_EDGE, math.ceil(2 * expected_outliers / max(n, 1)))
    return max(1, min(n - 2, wanted))
