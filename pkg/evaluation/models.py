"""
Evaluation Result Models
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

DISTANCE_VARIANCE = 7.0 / 120.0
DISTANCE_COVARIANCE = 0.008


@dataclass(frozen=True)
class DetectionReport:
    """Flagged-edge retrieval measured against injected outlier pairs."""

    true_positives: int
    false_positives: int
    false_negatives: int
    true_negatives: int

    @property
    def edge_total(self) -> int:
        return self.true_positives + self.false_positives + self.false_negatives + self.true_negatives

    @property
    def precision(self) -> float:
        retrieved = self.true_positives + self.false_positives
        return 1.0 if retrieved == 0 else self.true_positives / retrieved

    @property
    def recall(self) -> float:
        relevant = self.true_positives + self.false_negatives
        return 1.0 if relevant == 0 else self.true_positives / relevant

    def to_dict(self) -> dict[str, Any]:
        payload = asdict(self)
        payload.update(precision=self.precision, recall=self.recall, edge_total=self.edge_total)
        return payload


@dataclass(frozen=True)
class ScoreReport:
    score: float
    evaluated_pairs: int
    excluded_pairs: int
    against: str = "true"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class TheoryParams:
    """
    Normal approximation of hypercube distances.

    Distances between uniform points of [0,1]^dim are treated as
    Norm(mu, sigma2) with mu = √(dim/6); adjacent distances sharing a point
    have covariance ``cov``.
    """

    dim: int
    mu: float = field(init=False)
    sigma2: float = DISTANCE_VARIANCE
    cov: float = DISTANCE_COVARIANCE

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be ≥ 1, got {self.dim}")
        object.__setattr__(self, "mu", math.sqrt(self.dim / 6.0))

    @classmethod
    def for_dim(cls, dim: int) -> TheoryParams:
        return cls(dim=dim)

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    halfwidth: float
    trials: int

    @property
    def interval(self) -> tuple[float, float]:
        return self.estimate - self.halfwidth, self.estimate + self.halfwidth
