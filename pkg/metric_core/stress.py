"""Weighted raw stress."""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import pdist

from .types import DistanceMatrix, Embedding, WeightMatrix


def embedded_distances(X: Embedding) -> np.ndarray:
    """Condensed Euclidean distances of an embedding, in i<j row-major order."""
    return pdist(X.coords, metric="euclidean")


def raw_stress(D: DistanceMatrix, X: Embedding, W: WeightMatrix | None = None) -> float:
    """
    Weighted raw stress Σ_{i<j} w_ij (D_ij − ||x_i − x_j||)².

    Each unordered pair is counted once. The symmetric Σ_{i≠j} form found in
    the literature is exactly twice this value and has the same minimizers.
    ``W=None`` means unit weights.
    """
    if D.n != X.n or (W is not None and W.n != D.n):
        raise ValueError(
            f"Dimension mismatch: D.n={D.n}, X.n={X.n}" + (f", W.n={W.n}" if W is not None else "")
        )
    if D.n < 2:
        return 0.0
    iu = np.triu_indices(D.n, k=1)
    residual = D.values[iu] - embedded_distances(X)
    if W is None:
        return float(np.dot(residual, residual))
    return float(np.dot(W.w[iu], residual * residual))
