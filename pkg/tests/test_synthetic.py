"""
Unit tests for the synthetic ground-truth generators and scenario bundles
"""

import numpy as np
import pytest
from scipy.stats import ks_2samp

from metric_core import DistanceMatrix, pairwise_distances
from synthetic import (
    LognormalCenter,
    ShapeKind,
    build_scenario,
    deform_edge,
    derive_seed,
    inject_outliers,
    inject_scaled_outliers,
    load_bundle,
    lognormal_distort,
    outlier_count,
    sample_hypercube,
    save_bundle,
    shape_points,
)
from triangle_filter import count_broken_exact


class TestSeeding:
    def test_stable(self):
        assert derive_seed(7, "points", 0) == derive_seed(7, "points", 0)

    def test_label_and_index_matter(self):
        seeds = {derive_seed(7, "points", 0), derive_seed(7, "outliers", 0), derive_seed(7, "points", 1)}
        assert len(seeds) == 3


class TestSampleHypercube:
    def test_uniform_mean(self):
        points = sample_hypercube(1000, 2, seed=0)
        assert points.shape == (1000, 2)
        assert np.all((points >= 0) & (points <= 1))
        assert np.all(np.abs(points.mean(axis=0) - 0.5) < 0.03)

    def test_deterministic(self):
        assert np.array_equal(sample_hypercube(50, 3, seed=4), sample_hypercube(50, 3, seed=4))

    def test_side(self):
        points = sample_hypercube(200, 2, seed=1, side=10.0)
        assert points.max() <= 10.0
        assert points.max() > 1.0

    def test_invalid(self):
        with pytest.raises(ValueError):
            sample_hypercube(0, 2)
        with pytest.raises(ValueError):
            sample_hypercube(5, 2, side=0.0)


class TestInjectOutliers:
    def test_zero_outliers(self, clean_D):
        observed, pairs = inject_outliers(clean_D, 0, seed=1)
        assert np.array_equal(observed.values, clean_D.values)
        assert pairs == frozenset()

    def test_changes_exactly_m_pairs(self):
        D = pairwise_distances(sample_hypercube(30, 2, seed=2))
        observed, pairs = inject_outliers(D, 2, seed=3)
        assert len(pairs) == 2
        changed = np.argwhere(np.triu(observed.values != D.values, k=1))
        assert {tuple(map(int, p)) for p in changed} <= pairs
        assert D.edge_total - len(changed) >= 433

    def test_symmetric(self, outlier_scenario):
        values = outlier_scenario.observed_D.values
        assert np.array_equal(values, values.T)

    def test_out_of_range(self, clean_D):
        with pytest.raises(ValueError):
            inject_outliers(clean_D, clean_D.edge_total + 1)

    def test_replacements_follow_distance_distribution(self):
        D = pairwise_distances(sample_hypercube(40, 2, seed=5))
        replacements = []
        for seed in range(20):
            observed, pairs = inject_outliers(D, 500, seed=seed)
            replacements.extend(observed.values[i, j] for i, j in pairs)
        assert len(replacements) == 10_000
        assert ks_2samp(replacements, D.upper()).statistic < 0.05


class TestScaledOutliers:
    def test_factor_applied(self, clean_D):
        observed, pairs = inject_scaled_outliers(clean_D, 3, factor=4.0, seed=2)
        for i, j in pairs:
            assert observed.values[i, j] == pytest.approx(4.0 * clean_D.values[i, j])
            assert observed.values[j, i] == observed.values[i, j]

    def test_factor_positive(self, clean_D):
        with pytest.raises(ValueError):
            inject_scaled_outliers(clean_D, 3, factor=0.0)


class TestLognormal:
    def test_zero_sigma_identity(self, clean_D):
        assert lognormal_distort(clean_D, 0.0) is clean_D

    def test_mean_one_factors(self):
        n = 1415
        D = DistanceMatrix(np.ones((n, n)) - np.eye(n))
        factors = lognormal_distort(D, 0.5, seed=3).upper()
        assert factors.size > 10**6
        assert abs(factors.mean() - 1.0) < 0.01
        assert np.all(factors > 0)

    def test_median_one_factors(self):
        n = 450
        D = DistanceMatrix(np.ones((n, n)) - np.eye(n))
        factors = lognormal_distort(D, 0.6, seed=3, center=LognormalCenter.MEDIAN).upper()
        assert abs(np.median(factors) - 1.0) < 0.01
        assert abs(factors.mean() - np.exp(0.18)) < 0.01

    def test_centers_differ_by_constant_factor(self, clean_D):
        mean = lognormal_distort(clean_D, 0.5, seed=8, center="mean")
        median = lognormal_distort(clean_D, 0.5, seed=8, center="median")
        assert np.allclose(median.upper(), mean.upper() * np.exp(0.125), rtol=1e-12)

    def test_center_accepts_strings(self, clean_D):
        by_name = lognormal_distort(clean_D, 0.4, seed=2, center="median")
        by_enum = lognormal_distort(clean_D, 0.4, seed=2, center=LognormalCenter.MEDIAN)
        assert np.array_equal(by_name.values, by_enum.values)
        with pytest.raises(ValueError):
            lognormal_distort(clean_D, 0.4, center="mode")

    def test_negative_sigma(self, clean_D):
        with pytest.raises(ValueError):
            lognormal_distort(clean_D, -0.1)


class TestShapes:
    def test_plus_on_bars(self):
        points = shape_points(ShapeKind.PLUS, 200, seed=1)
        on_bar = (points[:, 0] == 0) | (points[:, 1] == 0)
        assert np.all(on_bar)
        assert np.all(np.abs(points) <= 1)

    def test_spiral_radius_grows(self):
        points = shape_points("spiral", 100, seed=2)
        radius = np.linalg.norm(points, axis=1)
        assert np.all(np.diff(radius) >= 0)

    def test_plus_clean_counts_zero_with_tolerance(self):
        D = pairwise_distances(shape_points("plus", 40, seed=3))
        assert not count_broken_exact(D).count.any()

    def test_jitter_breaks_collinearity(self):
        points = shape_points("plus", 50, jitter=1e-3, seed=4)
        assert not np.all((points[:, 0] == 0) | (points[:, 1] == 0))

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            shape_points("plus", 3)


class TestDeformEdge:
    def test_zero_factor_unchanged(self, clean_D):
        assert deform_edge(clean_D, 0, 1, 0.0) is clean_D

    def test_scales_one_pair(self, clean_D):
        deformed = deform_edge(clean_D, 3, 8, -2.0)
        assert deformed.values[3, 8] == pytest.approx(clean_D.values[3, 8] / 4)
        assert deformed.values[8, 3] == deformed.values[3, 8]
        assert np.count_nonzero(deformed.values != clean_D.values) == 2

    def test_distinct_indices(self, clean_D):
        with pytest.raises(ValueError):
            deform_edge(clean_D, 2, 2, 1.0)


class TestScenario:
    def test_outlier_count_arithmetic(self):
        assert outlier_count(70, 0.10) == 241

    def test_scenario_invariants(self, outlier_scenario):
        s = outlier_scenario
        assert len(s.outlier_set) == 241
        assert np.allclose(s.true_D.values, pairwise_distances(s.points).values, atol=1e-12)
        differing = {tuple(map(int, p)) for p in np.argwhere(np.triu(s.observed_D.values != s.true_D.values, k=1))}
        assert differing <= s.outlier_set
        assert s.meta["seed"] == 7

    def test_lognormal_scenario_distorts_every_pair(self):
        s = build_scenario("hypercube", n=20, sigma=0.6, seed=1)
        assert s.outlier_set == frozenset()
        assert len(s.distorted_pairs()) == 190

    def test_lognormal_center_recorded(self):
        s = build_scenario("hypercube", n=20, sigma=0.6, lognormal_center="median", seed=1)
        assert s.meta["lognormal_center"] == "median"
        assert build_scenario("hypercube", n=20, sigma=0.6, seed=1).meta["lognormal_center"] == "mean"

    def test_shape_scenario(self):
        s = build_scenario("spiral", n=40, jitter=1e-3, seed=2)
        assert s.points.shape == (40, 2)
        assert s.meta["generator"] == "spiral"

    def test_deterministic(self):
        a = build_scenario("hypercube", n=30, outlier_rate=0.1, sigma=0.2, seed=9)
        b = build_scenario("hypercube", n=30, outlier_rate=0.1, sigma=0.2, seed=9)
        assert np.array_equal(a.observed_D.values, b.observed_D.values)
        assert a.outlier_set == b.outlier_set


class TestBundle:
    def test_round_trip(self, tmp_bundle, outlier_scenario):
        loaded = load_bundle(tmp_bundle)
        assert np.array_equal(loaded.points, outlier_scenario.points)
        assert np.array_equal(loaded.observed_D.values, outlier_scenario.observed_D.values)
        assert loaded.outlier_set == outlier_scenario.outlier_set
        assert loaded.meta == outlier_scenario.meta

    def test_byte_identical(self, tmp_path):
        for name in ("a", "b"):
            save_bundle(build_scenario("hypercube", n=25, outlier_rate=0.1, seed=4), tmp_path / name)
        for file in ("points.csv", "true_d.csv", "observed_d.csv", "outliers.json", "meta.json"):
            assert (tmp_path / "a" / file).read_bytes() == (tmp_path / "b" / file).read_bytes()

    def test_missing_files(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_bundle(tmp_path)

    def test_outlier_rate_zero(self, tmp_path):
        save_bundle(build_scenario("hypercube", n=20, outlier_rate=0.0, seed=1), tmp_path)
        assert (tmp_path / "true_d.csv").read_bytes() == (tmp_path / "observed_d.csv").read_bytes()
