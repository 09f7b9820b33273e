"""
Triangle-Filtered MDS

Filter outlier dissimilarities by broken-triangle counts, then run weighted
SMACOF with 0/1 weights from the keep mask. If filtering disconnects the
kept-edge graph, φ is raised to the smallest value that reconnects it.
"""

from __future__ import annotations

import dataclasses
import logging
from typing import Optional

from metric_core import DistanceMatrix
from triangle_filter import (
    DEFAULT_EDGE_FRACTION,
    DEFAULT_REL_TOL,
    FilterMode,
    filter_mask,
    minimal_connected_threshold,
    tmds_filter,
)

from .models import SolverConfig, TmdsResult
from .smacof import smacof

logger = logging.getLogger(__name__)


def tmds_embed(
    D: DistanceMatrix,
    dim: int = 2,
    mode: Optional[FilterMode] = None,
    cfg: Optional[SolverConfig] = None,
    rel_tol: float = DEFAULT_REL_TOL,
    edge_fraction: float = DEFAULT_EDGE_FRACTION,
    expected_outlier_rate: Optional[float] = None,
) -> TmdsResult:
    """
    Filter then embed.

    Returns:
        TmdsResult with the embedding, the mask actually used, the filter
        diagnostics (``reconnected`` set when φ was raised) and the solve trace
    """
    cfg = cfg or SolverConfig()
    result = tmds_filter(
        D,
        mode=mode,
        rel_tol=rel_tol,
        edge_fraction=edge_fraction,
        expected_outlier_rate=expected_outlier_rate,
    )
    phi_selected = result.phi

    phi, adjusted = minimal_connected_threshold(result.counts, result.phi)
    if adjusted:
        result = dataclasses.replace(
            result, mask=filter_mask(result.counts, phi), phi=phi, reconnected=True
        )
        logger.warning(
            f"TMDS: raised φ {phi_selected} → {phi} to keep the graph connected; "
            f"{result.mask.n_flagged} edges still filtered"
        )

    solve = smacof(D, result.mask.to_weights(), dim=dim, cfg=cfg)
    logger.info(
        f"TMDS: N={D.n}, dim={dim}, φ={result.phi}, flagged={result.mask.n_flagged}, "
        f"stress={solve.final_stress:.6g}"
    )
    return TmdsResult(
        embedding=solve.embedding,
        mask=result.mask,
        filter_result=result,
        solve=solve,
        phi_selected=phi_selected,
    )
