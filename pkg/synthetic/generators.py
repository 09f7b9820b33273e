"""
Ground-Truth Generators

Point samplers (hypercube, PLUS, SPIRAL) and distortions applied to a
distance matrix (random replacement, scaling, log-normal noise, single-edge
deformation). Every generator is deterministic given its seed.
"""

from __future__ import annotations

import logging
from enum import Enum

import numpy as np

from metric_core import DistanceMatrix

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


class ShapeKind(str, Enum):
    """Structured 2-D point sets"""
    PLUS = "plus"
    SPIRAL = "spiral"


class LognormalCenter(str, Enum):
    """Which statistic of the log-normal factor is pinned to 1"""
    MEAN = "mean"
    MEDIAN = "median"


SPIRAL_TURNS = 2.0


def sample_hypercube(n: int, dim: int, seed: int = 0, side: float = 1.0) -> np.ndarray:
    """N i.i.d. uniform points in [0, side]^dim."""
    if n < 1 or dim < 1:
        raise ValueError(f"sample_hypercube needs n ≥ 1 and dim ≥ 1, got n={n}, dim={dim}")
    if not side > 0:
        raise ValueError(f"side must be > 0, got {side}")
    return np.random.default_rng(seed).uniform(0.0, side, size=(n, dim))


def _upper_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def _pick_pairs(n: int, m: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray, list[Pair]]:
    rows, cols = _upper_pairs(n)
    total = rows.size
    if not 0 <= m <= total:
        raise ValueError(f"Outlier count m must be in [0, {total}], got {m}")
    chosen = np.sort(rng.choice(total, size=m, replace=False))
    pairs = [(int(rows[k]), int(cols[k])) for k in chosen]
    return rows[chosen], cols[chosen], pairs


def inject_outliers(D: DistanceMatrix, m: int, seed: int = 0) -> tuple[DistanceMatrix, frozenset[Pair]]:
    """
    Replace m distinct pairs with values drawn from the original matrix.

    Each replacement is an independent uniform draw among the off-diagonal
    entries of the ORIGINAL D, so injections do not compound.
    """
    rng = np.random.default_rng(seed)
    rows, cols, pairs = _pick_pairs(D.n, m, rng)
    if m == 0:
        return D, frozenset()
    pool = D.upper()
    replacement = pool[rng.integers(0, pool.size, size=m)]
    values = np.array(D.values, copy=True)
    values[rows, cols] = replacement
    values[cols, rows] = replacement
    logger.debug(f"Injected {m} replacement outliers into N={D.n}")
    return DistanceMatrix(values), frozenset(pairs)


def inject_scaled_outliers(
    D: DistanceMatrix, m: int, factor: float, seed: int = 0
) -> tuple[DistanceMatrix, frozenset[Pair]]:
    """Multiply m distinct pairs by ``factor`` (> 1 enlarges, < 1 shortens)."""
    if not factor > 0:
        raise ValueError(f"factor must be > 0, got {factor}")
    rng = np.random.default_rng(seed)
    rows, cols, pairs = _pick_pairs(D.n, m, rng)
    values = np.array(D.values, copy=True)
    values[rows, cols] *= factor
    values[cols, rows] = values[rows, cols]
    return DistanceMatrix(values), frozenset(pairs)


def lognormal_distort(
    D: DistanceMatrix,
    sigma: float,
    seed: int = 0,
    center: LognormalCenter | str = LognormalCenter.MEAN,
) -> DistanceMatrix:
    """
    Multiply every pair by an i.i.d. log-normal factor with scale σ.

    With ``center="mean"`` the factor's arithmetic mean is 1 (log-space
    location −σ²/2). With ``center="median"`` its median is 1 (location 0),
    so distances grow by e^{σ²/2} on average.
    """
    center = LognormalCenter(center)
    if sigma < 0:
        raise ValueError(f"sigma must be ≥ 0, got {sigma}")
    if sigma == 0:
        return D
    rng = np.random.default_rng(seed)
    rows, cols = _upper_pairs(D.n)
    location = -0.5 * sigma * sigma if center == LognormalCenter.MEAN else 0.0
    factors = rng.lognormal(mean=location, sigma=sigma, size=rows.size)
    values = np.array(D.values, copy=True)
    values[rows, cols] *= factors
    values[cols, rows] = values[rows, cols]
    return DistanceMatrix(values)


def shape_points(kind: ShapeKind | str, n: int, jitter: float = 0.0, seed: int = 0) -> np.ndarray:
    """
    Structured 2-D point sets.

    plus: uniform on the union of the segments [−1, 1]×{0} and {0}×[−1, 1].
    spiral: Archimedean arc r = t / (2π·turns), t uniform on [π/2, 2π·turns],
    returned in order of increasing t. ``jitter`` adds N(0, jitter²) noise.
    """
    kind = ShapeKind(kind)
    if n < 4:
        raise ValueError(f"shape_points needs n ≥ 4, got {n}")
    if jitter < 0:
        raise ValueError(f"jitter must be ≥ 0, got {jitter}")
    rng = np.random.default_rng(seed)

    if kind == ShapeKind.PLUS:
        position = rng.uniform(-1.0, 1.0, size=n)
        vertical = rng.random(n) < 0.5
        points = np.zeros((n, 2))
        points[~vertical, 0] = position[~vertical]
        points[vertical, 1] = position[vertical]
    else:
        t_max = 2.0 * np.pi * SPIRAL_TURNS
        t = np.sort(rng.uniform(0.5 * np.pi, t_max, size=n))
        radius = t / t_max
        points = np.column_stack([radius * np.cos(t), radius * np.sin(t)])

    if jitter > 0:
        points = points + rng.normal(0.0, jitter, size=points.shape)
    return points


def deform_edge(D: DistanceMatrix, i: int, j: int, log2_factor: float) -> DistanceMatrix:
    """Scale the single pair (i, j) by 2^log2_factor."""
    if i == j:
        raise ValueError("deform_edge needs two distinct elements")
    if log2_factor == 0:
        return D
    return D.replaced([(i, j)], [D.values[i, j] * 2.0 ** log2_factor])
