"""
Shared fixtures for the triangle-filtered MDS test suite.

Provides:
- Repository root on sys.path so the top-level packages import directly
- Seeded hypercube point sets and their clean distance matrices
- A small outlier scenario reused by filter, solver and evaluation tests
"""

import sys
from pathlib import Path

# Add project root to python path FIRST
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

from metric_core import DistanceMatrix, pairwise_distances
from synthetic import build_scenario, sample_hypercube


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def square_points():
    """Unit square corners; every triangle is exactly metric."""
    return np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


@pytest.fixture
def clean_points():
    return sample_hypercube(30, 2, seed=3)


@pytest.fixture
def clean_D(clean_points) -> DistanceMatrix:
    return pairwise_distances(clean_points, 2)


@pytest.fixture
def outlier_scenario():
    """N=70, 2-D, 10% replacement outliers (241 pairs)."""
    return build_scenario("hypercube", n=70, dim=2, outlier_rate=0.10, seed=7)


@pytest.fixture
def tmp_bundle(tmp_path, outlier_scenario):
    from synthetic import save_bundle

    return save_bundle(outlier_scenario, tmp_path / "bundle")
