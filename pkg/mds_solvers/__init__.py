"""
MDS Solvers

Weighted SMACOF, the triangle-filtered pipeline built on it, and the Sammon
and sparsity-regularized baselines.
"""

from .models import (
    ClassicalEmbedding,
    DisconnectedGraphError,
    Fg12Result,
    InitMethod,
    SmacofResult,
    SolverConfig,
    StopReason,
    TmdsResult,
)
from .classical import classical_init, complete_on_kept_graph
from .smacof import smacof
from .tmds import tmds_embed
from .sammon import sammon_embed
from .fg12 import fg12_embed, fg12_objective
from .dispatch import EmbedMethod, MethodOutcome, embed_with

__all__ = [
    "ClassicalEmbedding",
    "DisconnectedGraphError",
    "Fg12Result",
    "InitMethod",
    "SmacofResult",
    "SolverConfig",
    "StopReason",
    "TmdsResult",
    "classical_init",
    "complete_on_kept_graph",
    "smacof",
    "tmds_embed",
    "sammon_embed",
    "fg12_embed",
    "fg12_objective",
    "EmbedMethod",
    "MethodOutcome",
    "embed_with",
]
