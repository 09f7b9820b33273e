"""
Histogram Threshold Selection

φ is the smallest count satisfying both
  1. Σ_{b ≤ φ} H(b) ≥ edge_fraction · |E|   (most edges stay)
  2. H(φ + 1) > H(φ)                         (a rising bin along the tail)
The cumulative sum includes b = 0; otherwise clean data could never satisfy
requirement 1. Gaps in the histogram read as zero-count bins.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from scipy.sparse.csgraph import connected_components

from metric_core import FilterMask

from .models import BreakHistogram, ThresholdSelection, TriangleCounts

logger = logging.getLogger(__name__)

DEFAULT_EDGE_FRACTION = 0.5


def build_histogram(tc: TriangleCounts) -> BreakHistogram:
    """Count unordered edges per broken-triangle count."""
    upper = tc.upper()
    if upper.size == 0:
        return BreakHistogram(bins={}, edge_total=0)
    freq = np.bincount(upper)
    bins = {int(b): int(c) for b, c in enumerate(freq) if c > 0}
    return BreakHistogram(bins=bins, edge_total=int(upper.size))


def select_threshold(
    h: BreakHistogram,
    edge_fraction: float = DEFAULT_EDGE_FRACTION,
    expected_outlier_rate: Optional[float] = None,
) -> ThresholdSelection:
    """
    Pick φ from the histogram.

    Args:
        h: break histogram
        edge_fraction: share of edges that must have count ≤ φ
        expected_outlier_rate: if given, overrides edge_fraction with 1 − rate

    Returns:
        ThresholdSelection; when no φ in [0, max_bin] qualifies, φ = max_bin
        (nothing filtered) with ``fallback=True``
    """
    if expected_outlier_rate is not None:
        if not 0.0 <= expected_outlier_rate < 1.0:
            raise ValueError(f"expected_outlier_rate must be in [0, 1), got {expected_outlier_rate}")
        edge_fraction = 1.0 - expected_outlier_rate
    if not 0.0 < edge_fraction <= 1.0:
        raise ValueError(f"edge_fraction must be in (0, 1], got {edge_fraction}")

    required = edge_fraction * h.edge_total
    cumulative = 0
    for phi in range(h.max_bin + 1):
        cumulative += h[phi]
        if cumulative >= required and h[phi + 1] > h[phi]:
            logger.info(f"Threshold φ={phi}: {h.tail(phi)} of {h.edge_total} edges above it")
            return ThresholdSelection(phi=phi, fallback=False)

    logger.info(f"No qualifying threshold; falling back to φ={h.max_bin} (nothing filtered)")
    return ThresholdSelection(phi=h.max_bin, fallback=True)


def filter_mask(tc: TriangleCounts, phi: int) -> FilterMask:
    """Keep edges with count ≤ φ."""
    if phi < 0:
        raise ValueError(f"phi must be ≥ 0, got {phi}")
    keep = tc.count <= phi
    np.fill_diagonal(keep, True)
    return FilterMask(keep)


def is_connected(mask: FilterMask) -> bool:
    n_components, _ = connected_components(mask.keep, directed=False)
    return n_components == 1


def minimal_connected_threshold(tc: TriangleCounts, phi: int) -> tuple[int, bool]:
    """
    Smallest threshold ≥ φ whose mask leaves the kept-edge graph connected.

    Returns:
        (threshold, adjusted) where adjusted is True when φ had to be raised
    """
    if is_connected(filter_mask(tc, phi)):
        return phi, False
    for candidate in np.unique(tc.upper()):
        candidate = int(candidate)
        if candidate <= phi:
            continue
        if is_connected(filter_mask(tc, candidate)):
            logger.warning(f"Filtered graph disconnected at φ={phi}; raised to φ={candidate}")
            return candidate, True
    # unreachable for N ≥ 2: the largest count keeps every edge
    return int(tc.upper().max(initial=phi)), True
