"""Run any embedding method by name with a uniform outcome."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from metric_core import DistanceMatrix, Embedding, FilterMask
from triangle_filter import DEFAULT_EDGE_FRACTION, DEFAULT_REL_TOL, FilterMode

from .fg12 import fg12_embed
from .models import SolverConfig
from .sammon import sammon_embed
from .smacof import smacof
from .tmds import tmds_embed


class EmbedMethod(str, Enum):
    TMDS = "tmds"
    SMACOF = "smacof"
    SAMMON = "sammon"
    FG12 = "fg12"


@dataclass(frozen=True, eq=False)
class MethodOutcome:
    method: EmbedMethod
    embedding: Embedding
    mask: Optional[FilterMask]
    diagnostics: dict[str, Any]


def embed_with(
    method: EmbedMethod | str,
    D: DistanceMatrix,
    dim: int = 2,
    cfg: Optional[SolverConfig] = None,
    mode: Optional[FilterMode] = None,
    lam: Optional[float] = None,
    rel_tol: float = DEFAULT_REL_TOL,
    edge_fraction: float = DEFAULT_EDGE_FRACTION,
    expected_outlier_rate: Optional[float] = None,
) -> MethodOutcome:
    """
    Embed ``D`` with the named method.

    ``mask`` is the filter mask for tmds and None otherwise. fg12 requires
    ``lam``.
    """
    method = EmbedMethod(method)
    if method == EmbedMethod.TMDS:
        result = tmds_embed(
            D,
            dim=dim,
            mode=mode,
            cfg=cfg,
            rel_tol=rel_tol,
            edge_fraction=edge_fraction,
            expected_outlier_rate=expected_outlier_rate,
        )
        return MethodOutcome(method, result.embedding, result.mask, result.diagnostics())
    if method == EmbedMethod.FG12:
        if lam is None:
            raise ValueError("fg12 needs a λ (lambda) value")
        result = fg12_embed(D, dim=dim, lam=lam, cfg=cfg)
        return MethodOutcome(method, result.embedding, None, result.diagnostics())
    if method == EmbedMethod.SAMMON:
        result = sammon_embed(D, dim=dim, cfg=cfg)
    else:
        result = smacof(D, dim=dim, cfg=cfg)
    return MethodOutcome(method, result.embedding, None, result.diagnostics())
