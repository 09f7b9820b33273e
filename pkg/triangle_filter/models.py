"""
Triangle Filter Data Models

Per-edge broken-triangle counts, their histogram, the counting mode and the
composed filter result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np

from metric_core import FilterMask


class CountingMode(str, Enum):
    """How triangles are enumerated"""
    EXACT = "exact"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class FilterMode:
    """Counting mode plus its sampling parameters."""

    kind: CountingMode = CountingMode.EXACT
    triangles_per_edge: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", CountingMode(self.kind))
        if self.kind == CountingMode.SAMPLED:
            if self.triangles_per_edge is None or self.triangles_per_edge < 1:
                raise ValueError(
                    f"sampled mode needs triangles_per_edge ≥ 1, got {self.triangles_per_edge}"
                )

    @classmethod
    def exact(cls) -> FilterMode:
        return cls(kind=CountingMode.EXACT)

    @classmethod
    def sampled(cls, triangles_per_edge: int, seed: int = 0) -> FilterMode:
        return cls(kind=CountingMode.SAMPLED, triangles_per_edge=triangles_per_edge, seed=seed)


@dataclass(frozen=True, eq=False)
class TriangleCounts:
    """Broken triangles per edge (``count``) and triangles examined per edge (``tested``)."""

    count: np.ndarray
    tested: np.ndarray

    def __post_init__(self):
        count = np.array(self.count, dtype=np.int64, copy=True)
        tested = np.array(self.tested, dtype=np.int64, copy=True)
        n = count.shape[0]
        if count.shape != (n, n) or tested.shape != (n, n):
            raise ValueError("TriangleCounts arrays must both be N×N")
        if not (np.array_equal(count, count.T) and np.array_equal(tested, tested.T)):
            raise ValueError("TriangleCounts must be symmetric")
        if np.any(np.diag(count)) or np.any(np.diag(tested)):
            raise ValueError("TriangleCounts diagonal must be zero")
        if np.any(count < 0) or np.any(count > tested) or np.any(tested > max(n - 2, 0)):
            raise ValueError("TriangleCounts require 0 ≤ count ≤ tested ≤ n − 2")
        count.setflags(write=False)
        tested.setflags(write=False)
        object.__setattr__(self, "count", count)
        object.__setattr__(self, "tested", tested)

    @property
    def n(self) -> int:
        return self.count.shape[0]

    def upper(self) -> np.ndarray:
        return self.count[np.triu_indices(self.n, k=1)]


@dataclass(frozen=True)
class BreakHistogram:
    """H(b): number of edges with exactly b broken triangles. Absent bins are zero."""

    bins: dict[int, int]
    edge_total: int

    def __post_init__(self):
        if any(b < 0 or c < 0 for b, c in self.bins.items()):
            raise ValueError("Histogram bins and values must be nonnegative")
        if sum(self.bins.values()) != self.edge_total:
            raise ValueError(
                f"Histogram mass {sum(self.bins.values())} != edge_total {self.edge_total}"
            )

    def __getitem__(self, b: int) -> int:
        return self.bins.get(b, 0)

    @property
    def max_bin(self) -> int:
        return max(self.bins) if self.bins else 0

    def cumulative(self, phi: int) -> int:
        return sum(c for b, c in self.bins.items() if b <= phi)

    def tail(self, phi: int) -> int:
        """Edges with count strictly above phi."""
        return self.edge_total - self.cumulative(phi)


@dataclass(frozen=True)
class ThresholdSelection:
    phi: int
    fallback: bool


@dataclass(frozen=True, eq=False)
class FilterResult:
    """Mask plus the diagnostics of one filtering run."""

    mask: FilterMask
    counts: TriangleCounts
    histogram: BreakHistogram
    phi: int
    fallback: bool
    mode: FilterMode = field(default_factory=FilterMode.exact)
    reconnected: bool = False

    def flagged_edges(self) -> list[tuple[int, int, int]]:
        return [(i, j, int(self.counts.count[i, j])) for i, j in self.mask.flagged_pairs()]

    def diagnostics(self) -> dict[str, Any]:
        """JSON-ready summary: bins, φ, flags and the flagged (i, j, count) triples."""
        return {
            "mode": self.mode.kind.value,
            "triangles_per_edge": self.mode.triangles_per_edge,
            "seed": self.mode.seed if self.mode.kind == CountingMode.SAMPLED else None,
            "n": self.counts.n,
            "edge_total": self.histogram.edge_total,
            "histogram": {str(b): c for b, c in sorted(self.histogram.bins.items())},
            "phi": self.phi,
            "fallback": self.fallback,
            "reconnected": self.reconnected,
            "flagged_count": self.mask.n_flagged,
            "flagged": [list(t) for t in self.flagged_edges()],
        }
