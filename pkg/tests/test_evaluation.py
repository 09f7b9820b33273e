"""
Unit tests for detection and embedding scores, the distance theory and the sweeps
"""

import math

import numpy as np
import pandas as pd
import pytest

from evaluation import (
    SHEPARD_COLUMNS,
    DetectionReport,
    TheoryParams,
    break_probability_mc,
    break_probability_theory,
    deformation_sweep,
    detection_report,
    distance_covariance_mc,
    distance_moments_mc,
    embedding_score,
    embedding_score_report,
    lambda_sweep,
    normal_cdf,
    rate_sweep,
    run_tasks,
    sampling_sweep,
    shepard_data,
    sigma_sweep,
    summarize,
    theory_table,
    timing_sweep,
)
from metric_core import Embedding, FilterMask, pairwise_distances
from mds_solvers import tmds_embed
from synthetic import build_scenario
from triangle_filter import is_broken


def _square(x):
    return x * x


def _mask_flagging(n, pairs):
    keep = np.ones((n, n), dtype=bool)
    for i, j in pairs:
        keep[i, j] = keep[j, i] = False
    return FilterMask(keep)


# =============================================================================
# Detection
# =============================================================================


class TestDetectionReport:
    def test_confusion_counts(self):
        mask = _mask_flagging(6, [(0, 1), (2, 3)])
        report = detection_report(mask, {(1, 0), (4, 5)})
        assert (report.true_positives, report.false_positives, report.false_negatives) == (1, 1, 1)
        assert report.true_negatives == 12
        assert report.edge_total == 15
        assert report.precision == pytest.approx(0.5)
        assert report.recall == pytest.approx(0.5)

    def test_empty_denominators_score_one(self):
        report = detection_report(FilterMask.all_kept(5), set())
        assert report.precision == 1.0
        assert report.recall == 1.0

    def test_nothing_flagged_with_outliers(self):
        report = detection_report(FilterMask.all_kept(5), {(0, 1)})
        assert report.precision == 1.0
        assert report.recall == 0.0

    def test_invalid_truth_pair(self):
        with pytest.raises(ValueError):
            detection_report(FilterMask.all_kept(4), {(2, 2)})
        with pytest.raises(ValueError):
            detection_report(FilterMask.all_kept(4), {(0, 9)})

    def test_to_dict(self):
        payload = DetectionReport(3, 1, 2, 10).to_dict()
        assert payload["precision"] == pytest.approx(0.75)
        assert payload["edge_total"] == 16


# =============================================================================
# Embedding score and Shepard tables
# =============================================================================


class TestEmbeddingScore:
    def test_exact_embedding_scores_zero(self, clean_points, clean_D):
        assert embedding_score(clean_D, Embedding(clean_points)) == pytest.approx(0.0, abs=1e-12)

    def test_doubled_distances(self, clean_points, clean_D):
        assert embedding_score(clean_D, Embedding(2.0 * clean_points)) == pytest.approx(math.log(2), abs=1e-12)

    @pytest.mark.parametrize("c", [0.25, 0.5, 3.0])
    def test_shrink_and_stretch_score_alike(self, clean_points, clean_D, c):
        shrunk = embedding_score(clean_D, Embedding(clean_points / c))
        stretched = embedding_score(clean_D, Embedding(clean_points * c))
        assert shrunk == pytest.approx(stretched, abs=1e-12)

    def test_zero_distances_excluded(self, square_points):
        coords = square_points.copy()
        coords[1] = coords[0]
        report = embedding_score_report(pairwise_distances(square_points), Embedding(coords))
        assert report.excluded_pairs == 1
        assert report.evaluated_pairs == 5

    def test_all_pairs_excluded(self, square_points):
        with pytest.raises(ValueError):
            embedding_score_report(pairwise_distances(square_points), Embedding(np.zeros((4, 2))))

    def test_shape_mismatch(self, clean_D):
        with pytest.raises(ValueError):
            embedding_score(clean_D, Embedding(np.zeros((4, 2))))


class TestShepardData:
    def test_one_row_per_pair(self, clean_points, clean_D):
        mask = _mask_flagging(30, [(0, 5)])
        table = shepard_data(clean_D, Embedding(clean_points), mask)
        assert list(table.columns) == SHEPARD_COLUMNS
        assert len(table) == 435
        assert int(table["flagged"].sum()) == 1
        assert np.allclose(table["input_distance"], table["embedded_distance"])

    def test_without_mask(self, clean_points, clean_D):
        table = shepard_data(clean_D, Embedding(clean_points))
        assert not table["flagged"].any()

    def test_flagged_rows_deviate_more(self):
        scenario = build_scenario("hypercube", n=70, dim=2, outlier_rate=0.10, seed=4)
        result = tmds_embed(scenario.observed_D, dim=2)
        table = shepard_data(scenario.observed_D, result.embedding, result.mask)
        deviation = (table["embedded_distance"] - table["input_distance"]).abs()
        assert table["flagged"].any()
        assert deviation[table["flagged"]].mean() > 3 * deviation[~table["flagged"]].mean()


# =============================================================================
# Theory
# =============================================================================


class TestNormalCdf:
    def test_median(self):
        assert normal_cdf(0.0) == 0.5

    def test_quantile(self):
        assert abs(normal_cdf(-1.96) - 0.0250) < 1e-4

    def test_symmetry(self):
        for x in np.linspace(-6, 6, 49):
            assert abs(normal_cdf(x) + normal_cdf(-x) - 1.0) < 1e-7

    def test_non_finite(self):
        with pytest.raises(ValueError):
            normal_cdf(float("nan"))


class TestTheoryParams:
    def test_values(self):
        params = TheoryParams.for_dim(6)
        assert params.mu == pytest.approx(1.0)
        assert params.sigma2 == pytest.approx(7 / 120)
        assert params.cov == 0.008

    def test_invalid_dim(self):
        with pytest.raises(ValueError):
            TheoryParams(dim=0)


class TestBreakProbability:
    def test_two_dimensions(self):
        assert 0.235 <= break_probability_theory(2) <= 0.245

    def test_decreases_with_dimension(self):
        values = [break_probability_theory(d) for d in (1, 2, 6, 10, 30)]
        assert values == sorted(values, reverse=True)

    def test_monte_carlo_matches_per_trial_loop(self):
        trials, seed = 2_000, 11
        mc = break_probability_mc(2, trials, seed=seed, block_size=trials)
        rng = np.random.default_rng(np.random.SeedSequence(seed).spawn(1)[0])
        p1, p2, p3, q1, q3 = (rng.random((trials, 2)) for _ in range(5))
        broken = sum(
            is_broken(math.dist(p1[t], p2[t]), math.dist(p2[t], p3[t]), math.dist(q1[t], q3[t]))
            for t in range(trials)
        )
        assert mc.estimate == pytest.approx(broken / trials, abs=1.5 / trials)

    def test_monte_carlo_agrees_in_six_dimensions(self):
        mc = break_probability_mc(6, 200_000, seed=1)
        assert abs(mc.estimate - break_probability_theory(6)) <= 0.02
        assert mc.halfwidth < 0.005
        low, high = mc.interval
        assert low < mc.estimate < high

    def test_closed_form_understates_two_dimensions(self):
        # the normal approximation is loosest at d=2; the gap shrinks with d
        gaps = [
            break_probability_mc(d, 100_000, seed=1).estimate - break_probability_theory(d)
            for d in (2, 6, 10)
        ]
        assert gaps[0] > 0.05
        assert abs(gaps[0]) > abs(gaps[1]) > abs(gaps[2])

    def test_halfwidth_shrinks_with_root_trials(self):
        small = break_probability_mc(2, 40_000, seed=6)
        large = break_probability_mc(2, 80_000, seed=6)
        assert large.halfwidth / small.halfwidth == pytest.approx(1 / math.sqrt(2), rel=0.05)

    def test_clean_triangles_never_break(self):
        assert break_probability_mc(3, 50_000, seed=2, clean=True).estimate == 0.0

    def test_independent_of_worker_count(self):
        sequential = break_probability_mc(2, 20_000, seed=3, block_size=5_000, workers=1)
        parallel = break_probability_mc(2, 20_000, seed=3, block_size=5_000, workers=2)
        assert sequential.estimate == parallel.estimate

    def test_invalid_trials(self):
        with pytest.raises(ValueError):
            break_probability_mc(2, 0)


class TestDistanceMoments:
    def test_covariance_near_constant(self):
        assert abs(distance_covariance_mc(2, 200_000, seed=4) - 0.008) <= 0.002

    def test_independent_control(self):
        assert abs(distance_covariance_mc(2, 200_000, seed=5, independent=True)) <= 0.002

    def test_high_dimensional_moments(self):
        mean, variance = distance_moments_mc(30, 200_000, seed=6)
        assert abs(mean - math.sqrt(5.0)) <= 0.02
        assert abs(variance - 7 / 120) <= 0.01

    def test_too_few_pairs(self):
        with pytest.raises(ValueError):
            distance_moments_mc(2, 1)


# =============================================================================
# Parallel fan-out and sweeps
# =============================================================================


class TestRunTasks:
    def test_order_preserved(self):
        assert run_tasks(_square, [3, 1, 2], workers=2) == [9, 1, 4]

    def test_invalid_workers(self):
        with pytest.raises(ValueError):
            run_tasks(_square, [1], workers=0)


class TestSummarize:
    def test_mean_std_count(self):
        rows = pd.DataFrame({"rate": [0.1, 0.1, 0.2], "score": [1.0, 3.0, 5.0]})
        summary = summarize(rows, ["rate"], ["score"])
        assert list(summary.columns) == ["rate", "score_mean", "score_std", "score_count"]
        assert summary["score_mean"].tolist() == [2.0, 5.0]
        assert summary["score_count"].tolist() == [2, 1]


class TestSweeps:
    def test_rate_sweep_rows(self):
        rows = rate_sweep(rates=(0.1,), n=20, repeats=2, seed=1)
        assert len(rows) == 4
        assert set(rows["method"]) == {"tmds", "smacof"}
        assert rows.loc[rows["method"] == "smacof", "precision"].isna().all()
        assert rows.loc[rows["method"] == "tmds", "recall"].notna().all()
        assert (rows["outliers"] == 19).all()

    def test_rate_sweep_reproducible(self):
        a = rate_sweep(rates=(0.1,), n=20, repeats=2, seed=1)
        b = rate_sweep(rates=(0.1,), n=20, repeats=2, seed=1, workers=2)
        pd.testing.assert_frame_equal(a, b)

    def test_invalid_rate(self):
        with pytest.raises(ValueError):
            rate_sweep(rates=(1.5,), n=10, repeats=1)

    def test_sigma_sweep(self):
        rows = sigma_sweep(sigmas=(0.3,), n=20, repeats=1, seed=2, methods=("smacof",))
        assert rows["sigma"].tolist() == [0.3]
        assert rows["score"].iloc[0] > 0

    def test_sigma_sweep_center(self):
        common = dict(sigmas=(0.6,), n=20, repeats=1, seed=2, methods=("smacof",))
        mean = sigma_sweep(**common)
        median = sigma_sweep(center="median", **common)
        assert mean["score"].iloc[0] != median["score"].iloc[0]
        with pytest.raises(ValueError):
            sigma_sweep(center="mode", **common)

    def test_deformation_sweep_shares_edges_across_factors(self):
        rows = deformation_sweep(log2_factors=(0.0, 3.0), n=30, repeats=2, seed=3)
        assert len(rows) == 4
        for _, group in rows.groupby("repeat"):
            assert group["i"].nunique() == 1
            assert group["j"].nunique() == 1
        assert rows.loc[rows["log2_factor"] == 0.0, "detected"].sum() == 0
        assert rows.loc[rows["log2_factor"] == 3.0, "detected"].sum() >= 1

    def test_theory_table(self):
        table = theory_table(dims=(6,), trials=20_000, seed=4)
        assert table.columns.tolist() == ["dim", "theory", "monte_carlo", "halfwidth", "abs_error", "trials"]
        assert table["abs_error"].iloc[0] < 0.03

    def test_sampling_sweep_has_exact_row(self):
        rows = sampling_sweep(triangles_per_edge=(5,), n=20, repeats=1, seed=5)
        assert rows["mode"].tolist() == ["exact", "sampled"]
        assert rows["triangles_per_edge"].tolist() == [18, 5]

    def test_lambda_sweep_shares_scenario(self):
        rows = lambda_sweep(lambdas=(1.0,), n=15, outliers=10, inits=2, seed=6)
        assert len(rows) == 2
        assert rows["seed"].nunique() == 1
        assert (rows["nonzero_count"] >= 0).all()

    def test_timing_sweep_phases(self):
        rows = timing_sweep(sizes=(20,), seed=7, lam=1.0)
        assert rows["phase"].tolist() == ["smacof", "filter", "tmds", "fg12"]
        assert (rows["seconds"] >= 0).all()
