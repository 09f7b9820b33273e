"""Metric core: distance matrices, embeddings, stress and alignment."""

from .types import DistanceMatrix, Embedding, FilterMask, WeightMatrix
from .distances import pairwise_distances, sammon_weights, SAMMON_EPSILON
from .stress import raw_stress, embedded_distances
from .procrustes import procrustes_align, procrustes_residual
from .io import (
    load_distance_csv,
    load_points_csv,
    read_json,
    read_matrix_csv,
    write_json,
    write_matrix_csv,
)

__all__ = [
    "DistanceMatrix",
    "Embedding",
    "FilterMask",
    "WeightMatrix",
    "pairwise_distances",
    "sammon_weights",
    "SAMMON_EPSILON",
    "raw_stress",
    "embedded_distances",
    "procrustes_align",
    "procrustes_residual",
    "load_distance_csv",
    "load_points_csv",
    "read_json",
    "read_matrix_csv",
    "write_json",
    "write_matrix_csv",
]
