"""Detection quality of a filter mask against known outlier pairs."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from metric_core import FilterMask

from .models import DetectionReport


def detection_report(mask: FilterMask, truth: Iterable[tuple[int, int]]) -> DetectionReport:
    """
    Count retrieved (keep == False) edges against the truth pairs.

    Truth pairs may be given in either orientation.
    """
    n = mask.n
    truth_matrix = np.zeros((n, n), dtype=bool)
    for i, j in truth:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise ValueError(f"Truth pair ({i}, {j}) is not an off-diagonal pair of N={n}")
        truth_matrix[min(i, j), max(i, j)] = True

    iu = np.triu_indices(n, k=1)
    retrieved = ~mask.keep[iu]
    relevant = truth_matrix[iu]
    return DetectionReport(
        true_positives=int(np.count_nonzero(retrieved & relevant)),
        false_positives=int(np.count_nonzero(retrieved & ~relevant)),
        false_negatives=int(np.count_nonzero(~retrieved & relevant)),
        true_negatives=int(np.count_nonzero(~retrieved & ~relevant)),
    )
