"""Pairwise Minkowski distances and Sammon weights."""

from __future__ import annotations

import logging

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .types import DistanceMatrix, WeightMatrix

logger = logging.getLogger(__name__)

SAMMON_EPSILON = 1e-9


def pairwise_distances(points, p: float = 2.0) -> DistanceMatrix:
    """
    Minkowski distances between all rows of ``points``.

    Args:
        points: N×d coordinates
        p: Minkowski order, p ≥ 1 (2 is Euclidean, 1 is Manhattan)

    Returns:
        DistanceMatrix with entries (Σ_k |x_ik − x_jk|^p)^(1/p)
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    if points.ndim != 2:
        raise ValueError(f"points must be an N×d array, got shape {points.shape}")
    if not np.all(np.isfinite(points)):
        raise ValueError("points must have finite coordinates")
    if not p >= 1:
        raise ValueError(f"Minkowski order p must be ≥ 1, got {p}")

    if points.shape[0] < 2:
        return DistanceMatrix(np.zeros((points.shape[0], points.shape[0])))

    if p == 2:
        condensed = pdist(points, metric="euclidean")
    elif p == 1:
        condensed = pdist(points, metric="cityblock")
    else:
        condensed = pdist(points, metric="minkowski", p=p)
    return DistanceMatrix(squareform(condensed, checks=False))


def sammon_weights(D: DistanceMatrix, epsilon: float = SAMMON_EPSILON) -> WeightMatrix:
    """Per-pair weights 1 / max(D_ij, epsilon); epsilon guards zero distances."""
    w = 1.0 / np.maximum(D.values, epsilon)
    np.fill_diagonal(w, 0.0)
    zero_pairs = int(np.count_nonzero(D.upper() < epsilon))
    if zero_pairs:
        logger.debug(f"Sammon weights: {zero_pairs} pairs below epsilon={epsilon} clamped")
    return WeightMatrix(w)
