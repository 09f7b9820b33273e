"""
Procrustes Alignment

Similarity transform (translation, rotation/reflection, uniform scale)
matching an embedding to reference coordinates. Used to draw offset lines
between embedded and ground-truth points; distance-based scores never need it.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import orthogonal_procrustes

from .types import Embedding


def procrustes_align(X: Embedding, ref) -> Embedding:
    """
    Align ``X`` to ``ref`` minimizing Σ_i ||s·R·(x_i − x̄) + t − ref_i||².

    Args:
        X: embedding to transform
        ref: N×d reference coordinates

    Returns:
        Transformed embedding

    Raises:
        ValueError: on shape mismatch or an all-coincident point set
    """
    ref = np.asarray(ref, dtype=float)
    if ref.shape != X.coords.shape:
        raise ValueError(f"Shape mismatch: X is {X.coords.shape}, ref is {ref.shape}")

    x_mean = X.coords.mean(axis=0)
    ref_mean = ref.mean(axis=0)
    xc = X.coords - x_mean
    rc = ref - ref_mean

    x_norm2 = float(np.sum(xc * xc))
    if x_norm2 == 0.0 or float(np.sum(rc * rc)) == 0.0:
        raise ValueError("Procrustes alignment is undefined for all-coincident point sets")

    rotation, singular_sum = orthogonal_procrustes(xc, rc)
    scale = singular_sum / x_norm2
    return Embedding(scale * xc @ rotation + ref_mean)


def procrustes_residual(X: Embedding, ref) -> float:
    """Σ_i ||T(x_i) − ref_i||² after optimal alignment."""
    aligned = procrustes_align(X, ref)
    diff = aligned.coords - np.asarray(ref, dtype=float)
    return float(np.sum(diff * diff))
