"""
Solver Configuration and Results
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from metric_core import Embedding, FilterMask
from triangle_filter import FilterResult

DEFAULT_MAX_ITERS = 300
DEFAULT_REL_STRESS_TOL = 1e-6


class DisconnectedGraphError(ValueError):
    """The graph of strictly positive weights has more than one component."""

    def __init__(self, n_components: int):
        self.n_components = n_components
        super().__init__(
            f"Positive-weight graph has {n_components} connected components; "
            f"the embedding is underdetermined (over-filtering?)"
        )


class StopReason(str, Enum):
    """Why majorization stopped"""
    TOLERANCE = "tolerance"
    EXACT_FIT = "exact_fit"
    STRESS_INCREASE = "stress_increase"
    MAX_ITERS = "max_iters"


class InitMethod(str, Enum):
    """Starting configuration for majorization"""
    CLASSICAL = "classical"
    RANDOM = "random"
    GIVEN = "given"


class SolverConfig(BaseModel):
    """Iteration limits, stopping rule and initialization for every solver."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    max_iters: int = Field(default=DEFAULT_MAX_ITERS, ge=1, description="Maximum iterations")
    rel_stress_tol: float = Field(
        default=DEFAULT_REL_STRESS_TOL, gt=0, description="Stop when (S_prev − S)/S_prev < tol"
    )
    init: InitMethod = Field(default=InitMethod.CLASSICAL, description="Initialization method")
    seed: int = Field(default=0, description="Seed for random initialization")
    initial: Optional[Embedding] = Field(default=None, description="Start for init='given'")

    @model_validator(mode="after")
    def _given_needs_initial(self) -> SolverConfig:
        if self.init == InitMethod.GIVEN and self.initial is None:
            raise ValueError("init='given' requires an initial embedding")
        return self

    def starting_from(self, X: Embedding) -> SolverConfig:
        """Same limits, starting at ``X``."""
        return self.model_copy(update={"init": InitMethod.GIVEN, "initial": X})


@dataclass(frozen=True, eq=False)
class ClassicalEmbedding:
    embedding: Embedding
    eigenvalues: np.ndarray
    rank_deficient: bool


@dataclass(frozen=True, eq=False)
class SmacofResult:
    embedding: Embedding
    stress_trace: list[float]
    iterations: int
    stop_reason: StopReason

    @property
    def converged(self) -> bool:
        """Relative improvement fell below tolerance, or the fit is exact."""
        return self.stop_reason in (StopReason.TOLERANCE, StopReason.EXACT_FIT)

    @property
    def final_stress(self) -> float:
        return self.stress_trace[-1]

    def diagnostics(self) -> dict[str, Any]:
        return {
            "iterations": self.iterations,
            "converged": self.converged,
            "stop_reason": self.stop_reason.value,
            "final_stress": self.final_stress,
            "stress_trace": list(self.stress_trace),
        }


@dataclass(frozen=True, eq=False)
class TmdsResult:
    embedding: Embedding
    mask: FilterMask
    filter_result: FilterResult
    solve: SmacofResult
    phi_selected: int

    @property
    def reconnected(self) -> bool:
        return self.filter_result.reconnected

    def diagnostics(self) -> dict[str, Any]:
        return {
            **self.solve.diagnostics(),
            "filter": self.filter_result.diagnostics(),
            "phi_selected": self.phi_selected,
            "phi_used": self.filter_result.phi,
            "reconnected": self.reconnected,
        }


@dataclass(frozen=True, eq=False)
class Fg12Result:
    """Embedding plus the sparse symmetric outlier-offset matrix O."""

    embedding: Embedding
    outlier_offsets: np.ndarray
    nonzero_count: int
    objective_trace: list[float] = field(default_factory=list)
    iterations: int = 0

    def flagged_pairs(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self.outlier_offsets, k=1))
        return [(int(i), int(j)) for i, j in zip(rows, cols)]

    def diagnostics(self) -> dict[str, Any]:
        return {
            "iterations": self.iterations,
            "nonzero_count": self.nonzero_count,
            "final_objective": self.objective_trace[-1] if self.objective_trace else None,
            "objective_trace": list(self.objective_trace),
        }
