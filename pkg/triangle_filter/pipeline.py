"""Counting → histogram → threshold → mask."""

from __future__ import annotations

import logging
from typing import Optional

from metric_core import DistanceMatrix

from .counting import DEFAULT_REL_TOL, count_broken_exact, count_broken_sampled
from .models import CountingMode, FilterMode, FilterResult, TriangleCounts
from .threshold import DEFAULT_EDGE_FRACTION, build_histogram, filter_mask, select_threshold

logger = logging.getLogger(__name__)


def count_broken(D: DistanceMatrix, mode: FilterMode, rel_tol: float = DEFAULT_REL_TOL) -> TriangleCounts:
    if mode.kind == CountingMode.SAMPLED:
        return count_broken_sampled(D, mode.triangles_per_edge, seed=mode.seed, rel_tol=rel_tol)
    return count_broken_exact(D, rel_tol=rel_tol)


def tmds_filter(
    D: DistanceMatrix,
    mode: Optional[FilterMode] = None,
    rel_tol: float = DEFAULT_REL_TOL,
    edge_fraction: float = DEFAULT_EDGE_FRACTION,
    expected_outlier_rate: Optional[float] = None,
) -> FilterResult:
    """
    Flag outlier dissimilarities by their broken-triangle counts.

    Deterministic given ``mode`` (including its seed).
    """
    mode = mode or FilterMode.exact()
    counts = count_broken(D, mode, rel_tol=rel_tol)
    histogram = build_histogram(counts)
    selection = select_threshold(
        histogram, edge_fraction=edge_fraction, expected_outlier_rate=expected_outlier_rate
    )
    mask = filter_mask(counts, selection.phi)
    logger.info(
        f"Filter ({mode.kind.value}): N={D.n}, φ={selection.phi}, "
        f"flagged {mask.n_flagged}/{histogram.edge_total}, fallback={selection.fallback}"
    )
    return FilterResult(
        mask=mask,
        counts=counts,
        histogram=histogram,
        phi=selection.phi,
        fallback=selection.fallback,
        mode=mode,
    )
