"""
Weighted SMACOF

Stress majorization with the weighted Guttman transform

    X⁺ = V⁺ B(X) X

where V is the weighted Laplacian (V_ij = −w_ij, V_ii = Σ_j w_ij) and
B(X)_ij = −w_ij D_ij / d_ij(X) for d_ij(X) > 0. V⁺ is the pseudo-inverse,
which pins the translation mode. Stress never increases between iterates.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from scipy.linalg import pinvh
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import pdist, squareform

from metric_core import DistanceMatrix, Embedding, WeightMatrix, raw_stress

from .classical import classical_init, complete_on_kept_graph
from .models import DisconnectedGraphError, InitMethod, SmacofResult, SolverConfig, StopReason

logger = logging.getLogger(__name__)


def check_connected(W: WeightMatrix):
    positive = W.w > 0
    np.fill_diagonal(positive, False)
    n_components, _ = connected_components(positive, directed=False)
    if n_components > 1:
        raise DisconnectedGraphError(n_components)


def initial_configuration(D: DistanceMatrix, W: WeightMatrix, dim: int, cfg: SolverConfig) -> Embedding:
    if cfg.init == InitMethod.GIVEN:
        if cfg.initial.n != D.n or cfg.initial.dim != dim:
            raise ValueError(
                f"Initial embedding is {cfg.initial.n}×{cfg.initial.dim}, expected {D.n}×{dim}"
            )
        return cfg.initial
    if cfg.init == InitMethod.RANDOM:
        rng = np.random.default_rng(cfg.seed)
        kept = W.w > 0
        scale = float(D.values[kept].max()) if kept.any() else 1.0
        scale = scale or 1.0
        return Embedding(rng.uniform(0.0, scale, size=(D.n, dim)))
    return classical_init(complete_on_kept_graph(D, W), dim).embedding


def guttman_transform(
    X: np.ndarray, delta_w: np.ndarray, w: np.ndarray, V_pinv: np.ndarray
) -> np.ndarray:
    """One majorization step; ``delta_w`` is the element-wise product w ∘ D."""
    dist = squareform(pdist(X))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(dist > 0, delta_w / dist, 0.0)
    B = -ratio
    np.fill_diagonal(B, 0.0)
    np.fill_diagonal(B, -B.sum(axis=1))
    return V_pinv @ (B @ X)


def smacof(
    D: DistanceMatrix,
    W: Optional[WeightMatrix] = None,
    dim: int = 2,
    cfg: Optional[SolverConfig] = None,
) -> SmacofResult:
    """
    Minimize Σ_{i<j} w_ij (D_ij − ||x_i − x_j||)² by majorization.

    Args:
        D: target dissimilarities
        W: pair weights (unit weights when omitted)
        dim: target dimension, 1 ≤ dim < N
        cfg: iteration limits and initialization

    Returns:
        SmacofResult with the embedding and the non-increasing stress trace

    Raises:
        DisconnectedGraphError: positive weights do not connect all elements
        ValueError: dimension or shape problems
    """
    cfg = cfg or SolverConfig()
    W = W if W is not None else WeightMatrix.ones(D.n)
    if W.n != D.n:
        raise ValueError(f"Dimension mismatch: D.n={D.n}, W.n={W.n}")
    if dim < 1 or dim >= D.n:
        raise ValueError(f"smacof needs 1 ≤ dim < N, got dim={dim}, N={D.n}")
    check_connected(W)

    w = np.array(W.w, copy=True)
    np.fill_diagonal(w, 0.0)
    V = -w
    np.fill_diagonal(V, w.sum(axis=1))
    V_pinv = pinvh(V)
    delta_w = w * D.values

    X = initial_configuration(D, W, dim, cfg)
    stress = raw_stress(D, X, W)
    trace = [stress]
    stop = StopReason.EXACT_FIT if stress == 0.0 else None
    iterations = 0

    while stop is None:
        if iterations >= cfg.max_iters:
            stop = StopReason.MAX_ITERS
            break
        candidate = Embedding(guttman_transform(X.coords, delta_w, w, V_pinv))
        new_stress = raw_stress(D, candidate, W)
        if new_stress > stress:
            # rejected step; keep the better iterate
            stop = StopReason.STRESS_INCREASE
            break
        iterations += 1
        X = candidate
        trace.append(new_stress)
        improvement = (stress - new_stress) / stress
        stress = new_stress
        if stress == 0.0:
            stop = StopReason.EXACT_FIT
        elif improvement < cfg.rel_stress_tol:
            stop = StopReason.TOLERANCE

    logger.debug(
        f"SMACOF: N={D.n}, dim={dim}, {iterations} iterations, "
        f"stress {trace[0]:.6g} → {trace[-1]:.6g}, stopped on {stop.value}"
    )
    return SmacofResult(embedding=X, stress_trace=trace, iterations=iterations, stop_reason=stop)
