"""
Ground-Truth Scenarios and Bundles

A scenario couples generating points, their true distances, the observed
(distorted) distances and the injected outlier pairs. On disk it is a
directory bundle:

    points.csv  true_d.csv  observed_d.csv  outliers.json  meta.json
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import numpy as np

from metric_core import (
    DistanceMatrix,
    load_distance_csv,
    load_points_csv,
    pairwise_distances,
    read_json,
    write_json,
    write_matrix_csv,
)

from .generators import (
    LognormalCenter,
    Pair,
    ShapeKind,
    inject_outliers,
    lognormal_distort,
    sample_hypercube,
    shape_points,
)
from .seeding import derive_seed

logger = logging.getLogger(__name__)

BUNDLE_FILES = ("points.csv", "true_d.csv", "observed_d.csv", "outliers.json", "meta.json")


class PointKind(str, Enum):
    HYPERCUBE = "hypercube"
    PLUS = "plus"
    SPIRAL = "spiral"


@dataclass(frozen=True, eq=False)
class GroundTruthScenario:
    points: np.ndarray
    true_D: DistanceMatrix
    observed_D: DistanceMatrix
    outlier_set: frozenset[Pair]
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.true_D.n

    def distorted_pairs(self) -> list[Pair]:
        """Pairs whose observed value was produced by a distortion."""
        if self.meta.get("sigma", 0.0) > 0:
            rows, cols = np.triu_indices(self.n, k=1)
            return list(zip(rows.tolist(), cols.tolist()))
        return sorted(self.outlier_set)


def outlier_count(n: int, rate: float) -> int:
    """⌊rate · N(N−1)/2⌋, robust to float noise just below an integer."""
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"outlier rate must be in [0, 1], got {rate}")
    return int(math.floor(rate * (n * (n - 1) // 2) + 1e-9))


def build_scenario(
    kind: PointKind | str = PointKind.HYPERCUBE,
    n: int = 70,
    dim: int = 2,
    outlier_rate: float = 0.0,
    outlier_count_override: Optional[int] = None,
    sigma: float = 0.0,
    lognormal_center: LognormalCenter | str = LognormalCenter.MEAN,
    side: float = 1.0,
    jitter: float = 0.0,
    seed: int = 0,
) -> GroundTruthScenario:
    """
    Generate points, true distances, and their distortion.

    Sub-seeds for points, injection and log-normal noise derive from ``seed``.
    Shapes are 2-D; ``dim`` only applies to the hypercube.
    """
    kind = PointKind(kind)
    lognormal_center = LognormalCenter(lognormal_center)
    if kind == PointKind.HYPERCUBE:
        points = sample_hypercube(n, dim, seed=derive_seed(seed, "points"), side=side)
    else:
        points = side * shape_points(ShapeKind(kind.value), n, jitter=jitter, seed=derive_seed(seed, "points"))

    true_D = pairwise_distances(points, 2)
    m = outlier_count_override if outlier_count_override is not None else outlier_count(n, outlier_rate)
    observed, outliers = inject_outliers(true_D, m, seed=derive_seed(seed, "outliers"))
    observed = lognormal_distort(observed, sigma, seed=derive_seed(seed, "lognormal"), center=lognormal_center)

    meta = {
        "generator": kind.value,
        "n": n,
        "dim": int(points.shape[1]),
        "outlier_rate": outlier_rate,
        "outlier_count": m,
        "sigma": sigma,
        "lognormal_center": lognormal_center.value,
        "side": side,
        "jitter": jitter,
        "seed": seed,
    }
    logger.info(f"Scenario {kind.value}: N={n}, dim={points.shape[1]}, {m} outliers, σ={sigma}, seed={seed}")
    return GroundTruthScenario(points=points, true_D=true_D, observed_D=observed, outlier_set=outliers, meta=meta)


def save_bundle(scenario: GroundTruthScenario, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_matrix_csv(directory / "points.csv", scenario.points)
    write_matrix_csv(directory / "true_d.csv", scenario.true_D.values)
    write_matrix_csv(directory / "observed_d.csv", scenario.observed_D.values)
    write_json(directory / "outliers.json", {"pairs": [list(p) for p in sorted(scenario.outlier_set)]})
    write_json(directory / "meta.json", scenario.meta)
    logger.info(f"Scenario bundle written to {directory}")
    return directory


def load_bundle(directory: str | Path) -> GroundTruthScenario:
    directory = Path(directory)
    missing = [name for name in BUNDLE_FILES if not (directory / name).exists()]
    if missing:
        raise FileNotFoundError(f"Bundle {directory} is missing {', '.join(missing)}")
    pairs = read_json(directory / "outliers.json").get("pairs", [])
    return GroundTruthScenario(
        points=load_points_csv(directory / "points.csv"),
        true_D=load_distance_csv(directory / "true_d.csv"),
        observed_D=load_distance_csv(directory / "observed_d.csv"),
        outlier_set=frozenset((int(i), int(j)) for i, j in pairs),
        meta=read_json(directory / "meta.json"),
    )
