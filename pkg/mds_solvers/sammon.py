"""Sammon-weighted SMACOF baseline: weights 1/D_ij down-weight long distances."""

from __future__ import annotations

from typing import Optional

from metric_core import SAMMON_EPSILON, DistanceMatrix, sammon_weights

from .models import SmacofResult, SolverConfig
from .smacof import smacof


def sammon_embed(
    D: DistanceMatrix,
    dim: int = 2,
    cfg: Optional[SolverConfig] = None,
    epsilon: float = SAMMON_EPSILON,
) -> SmacofResult:
    return smacof(D, sammon_weights(D, epsilon=epsilon), dim=dim, cfg=cfg)
