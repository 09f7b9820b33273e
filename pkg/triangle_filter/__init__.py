"""
Triangle Filter

Detects outlier dissimilarities by the number of triangle-inequality
violations each edge takes part in, and turns the counts into a keep mask.
"""

from .models import (
    BreakHistogram,
    CountingMode,
    FilterMode,
    FilterResult,
    ThresholdSelection,
    TriangleCounts,
)
from .counting import (
    DEFAULT_REL_TOL,
    count_broken_exact,
    count_broken_sampled,
    default_triangles_per_edge,
    broken_sides,
    is_broken,
)
from .threshold import (
    DEFAULT_EDGE_FRACTION,
    build_histogram,
    filter_mask,
    is_connected,
    minimal_connected_threshold,
    select_threshold,
)
from .pipeline import count_broken, tmds_filter

__all__ = [
    "BreakHistogram",
    "CountingMode",
    "FilterMode",
    "FilterResult",
    "ThresholdSelection",
    "TriangleCounts",
    "DEFAULT_REL_TOL",
    "DEFAULT_EDGE_FRACTION",
    "count_broken",
    "count_broken_exact",
    "count_broken_sampled",
    "default_triangles_per_edge",
    "broken_sides",
    "is_broken",
    "build_histogram",
    "filter_mask",
    "is_connected",
    "minimal_connected_threshold",
    "select_threshold",
    "tmds_filter",
]
