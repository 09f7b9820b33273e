"""Synthetic ground truth: point samplers, distortions and scenario bundles."""

from .generators import (
    LognormalCenter,
    ShapeKind,
    deform_edge,
    inject_outliers,
    inject_scaled_outliers,
    lognormal_distort,
    sample_hypercube,
    shape_points,
)
from .scenario import (
    GroundTruthScenario,
    PointKind,
    build_scenario,
    load_bundle,
    outlier_count,
    save_bundle,
)
from .seeding import derive_seed

__all__ = [
    "LognormalCenter",
    "ShapeKind",
    "PointKind",
    "GroundTruthScenario",
    "deform_edge",
    "inject_outliers",
    "inject_scaled_outliers",
    "lognormal_distort",
    "sample_hypercube",
    "shape_points",
    "build_scenario",
    "load_bundle",
    "outlier_count",
    "save_bundle",
    "derive_seed",
]
