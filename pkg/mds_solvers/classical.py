"""
Classical (Torgerson) Scaling

Double-centers the squared dissimilarities and embeds along the leading
eigenvectors. Serves as the deterministic starting point for majorization.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.linalg import eigh
from scipy.sparse.csgraph import shortest_path

from metric_core import DistanceMatrix, Embedding, WeightMatrix

from .models import ClassicalEmbedding

logger = logging.getLogger(__name__)

# eigenvalues below this fraction of the largest count as zero
SPECTRAL_REL_TOL = 1e-10


def classical_init(D: DistanceMatrix, dim: int) -> ClassicalEmbedding:
    """
    Torgerson embedding of D in ``dim`` dimensions.

    Directions without a positive eigenvalue are padded with zero
    coordinates and reported through ``rank_deficient``.
    """
    n = D.n
    if dim < 1 or dim >= n:
        raise ValueError(f"classical_init needs 1 ≤ dim < N, got dim={dim}, N={n}")

    squared = D.values ** 2
    row_mean = squared.mean(axis=1)
    B = -0.5 * (squared - row_mean[:, None] - row_mean[None, :] + squared.mean())

    evals, evecs = eigh(B, subset_by_index=[n - dim, n - 1])
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]

    # fix each eigenvector's sign so the output does not depend on the solver's choice
    pivots = np.argmax(np.abs(evecs), axis=0)
    signs = np.sign(evecs[pivots, np.arange(dim)])
    signs[signs == 0] = 1.0
    evecs = evecs * signs

    top = max(float(evals[0]), 0.0)
    positive = evals > SPECTRAL_REL_TOL * top if top > 0 else np.zeros(dim, dtype=bool)
    coords = evecs * np.sqrt(np.where(positive, evals, 0.0))
    rank_deficient = not bool(positive.all())
    if rank_deficient:
        logger.info(f"Classical init: only {int(positive.sum())} of {dim} directions positive; padded with zeros")
    return ClassicalEmbedding(embedding=Embedding(coords), eigenvalues=evals, rank_deficient=rank_deficient)


def complete_on_kept_graph(D: DistanceMatrix, W: WeightMatrix) -> DistanceMatrix:
    """
    Replace zero-weight entries by shortest-path lengths over positive-weight pairs.

    Keeps removed dissimilarities out of the classical start. Requires a
    connected positive-weight graph.
    """
    kept = W.w > 0
    np.fill_diagonal(kept, False)
    if kept.sum() == D.n * (D.n - 1):
        return D
    graph = np.where(kept, D.values, 0.0)
    # zero-length kept edges would read as missing; nudge them
    graph[kept & (graph == 0)] = np.finfo(float).tiny
    paths = shortest_path(graph, method="D", directed=False)
    completed = np.where(kept, D.values, paths)
    np.fill_diagonal(completed, 0.0)
    return DistanceMatrix(0.5 * (completed + completed.T))
