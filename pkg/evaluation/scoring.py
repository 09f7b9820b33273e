"""
Embedding Quality

Log-ratio embedding score and Shepard-diagram tables.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np
import pandas as pd
from scipy.spatial.distance import pdist

from metric_core import DistanceMatrix, Embedding, FilterMask

from .models import ScoreReport

logger = logging.getLogger(__name__)

MIN_SCORED_DISTANCE = 1e-12
SHEPARD_COLUMNS = ["i", "j", "input_distance", "embedded_distance", "flagged"]


def _check_shapes(D: DistanceMatrix, X: Embedding):
    if X.n != D.n:
        raise ValueError(f"Embedding has {X.n} points but the distance matrix is {D.n}×{D.n}")


def embedding_score_report(
    true_D: DistanceMatrix,
    X: Embedding,
    min_distance: float = MIN_SCORED_DISTANCE,
    against: str = "true",
) -> ScoreReport:
    """
    Mean |log(embedded / reference distance)| over unordered pairs.

    Pairs where either distance is below ``min_distance`` are excluded and
    counted. Lower is better; shrinking and stretching by the same factor
    score the same.

    Raises:
        ValueError: shape mismatch, or every pair excluded
    """
    _check_shapes(true_D, X)
    reference = true_D.upper()
    embedded = pdist(X.coords)
    usable = (reference >= min_distance) & (embedded >= min_distance)
    evaluated = int(np.count_nonzero(usable))
    excluded = int(usable.size - evaluated)
    if evaluated == 0:
        raise ValueError("Every pair is below the scoring distance floor; score is undefined")
    if excluded:
        logger.debug(f"Embedding score excluded {excluded} near-zero pairs")
    score = float(np.mean(np.abs(np.log(embedded[usable] / reference[usable]))))
    return ScoreReport(score=score, evaluated_pairs=evaluated, excluded_pairs=excluded, against=against)


def embedding_score(true_D: DistanceMatrix, X: Embedding, min_distance: float = MIN_SCORED_DISTANCE) -> float:
    return embedding_score_report(true_D, X, min_distance=min_distance).score


def shepard_data(observed_D: DistanceMatrix, X: Embedding, mask: Optional[FilterMask] = None) -> pd.DataFrame:
    """One row per unordered pair: input distance, embedded distance and flag."""
    _check_shapes(observed_D, X)
    mask = mask or FilterMask.all_kept(observed_D.n)
    if mask.n != observed_D.n:
        raise ValueError(f"Mask is {mask.n}×{mask.n} but the distance matrix is {observed_D.n}×{observed_D.n}")
    rows, cols = np.triu_indices(observed_D.n, k=1)
    return pd.DataFrame(
        {
            "i": rows,
            "j": cols,
            "input_distance": observed_D.values[rows, cols],
            "embedded_distance": pdist(X.coords),
            "flagged": ~mask.keep[rows, cols],
        },
        columns=SHEPARD_COLUMNS,
    )
