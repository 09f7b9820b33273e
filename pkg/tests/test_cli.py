"""
End-to-end tests for the command-line driver
"""

import numpy as np
import pandas as pd
import pytest

from cli import build_parser, main
from metric_core import read_json, read_matrix_csv

pytestmark = pytest.mark.integration


@pytest.fixture
def bundle(tmp_path):
    out = tmp_path / "s1"
    assert main(["generate", "--n", "70", "--dim", "2", "--outliers", "0.10", "--seed", "7", "--out", str(out)]) == 0
    return out


@pytest.fixture
def clean_bundle(tmp_path):
    out = tmp_path / "clean"
    assert main(["generate", "--n", "30", "--outliers", "0", "--seed", "3", "--out", str(out)]) == 0
    return out


class TestParser:
    def test_command_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_list_flags(self):
        args = build_parser().parse_args(["sweep", "--rates", "0.1,0.2", "--dims", "2,6"])
        assert args.rates == [0.1, 0.2]
        assert args.dims == [2, 6]

    def test_bad_list(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["sweep", "--rates", "0.1,abc"])


class TestGenerate:
    def test_bundle_contents(self, bundle):
        outliers = read_json(bundle / "outliers.json")["pairs"]
        assert len(outliers) == 241
        assert read_json(bundle / "meta.json")["seed"] == 7
        assert (bundle / "config.yaml").exists()

    def test_prints_output_path(self, tmp_path, capsys):
        out = tmp_path / "printed"
        assert main(["generate", "--n", "10", "--out", str(out)]) == 0
        assert str(out) in capsys.readouterr().out

    def test_zero_outliers_leave_distances_untouched(self, clean_bundle):
        assert (clean_bundle / "true_d.csv").read_bytes() == (clean_bundle / "observed_d.csv").read_bytes()
        assert read_json(clean_bundle / "outliers.json")["pairs"] == []

    def test_rerun_is_byte_identical(self, bundle, tmp_path):
        again = tmp_path / "again"
        assert main(["generate", "--n", "70", "--dim", "2", "--outliers", "0.10", "--seed", "7", "--out", str(again)]) == 0
        for name in ("points.csv", "true_d.csv", "observed_d.csv", "outliers.json", "meta.json"):
            assert (bundle / name).read_bytes() == (again / name).read_bytes()

    def test_invalid_rate(self, tmp_path):
        assert main(["generate", "--outliers", "1.5", "--out", str(tmp_path / "x")]) == 2

    def test_lognormal_center(self, tmp_path):
        out = tmp_path / "median"
        args = ["generate", "--n", "10", "--sigma", "0.5", "--lognormal-center", "median", "--out", str(out)]
        assert main(args) == 0
        assert read_json(out / "meta.json")["lognormal_center"] == "median"
        with pytest.raises(SystemExit):
            build_parser().parse_args(["generate", "--lognormal-center", "mode"])

    def test_default_output_root(self, tmp_path, monkeypatch):
        monkeypatch.setenv("TMDS_OUTPUT_ROOT", str(tmp_path / "runs"))
        assert main(["generate", "--n", "10"]) == 0
        assert (tmp_path / "runs" / "generate" / "observed_d.csv").exists()


class TestFilter:
    def test_clean_input_falls_back(self, clean_bundle, tmp_path):
        out = tmp_path / "filter"
        assert main(["filter", "--input", str(clean_bundle), "--out", str(out)]) == 0
        diagnostics = read_json(out / "diagnostics.json")
        assert diagnostics["fallback"] is True
        assert diagnostics["flagged_count"] == 0
        assert read_matrix_csv(out / "mask.csv").all()

    def test_outliers_flagged(self, bundle, tmp_path):
        out = tmp_path / "filter"
        assert main(["filter", "--input", str(bundle), "--out", str(out)]) == 0
        mask = read_matrix_csv(out / "mask.csv")
        counts = read_matrix_csv(out / "counts.csv")
        assert mask.shape == counts.shape == (70, 70)
        assert np.array_equal(mask, mask.T)
        flagged = int(np.count_nonzero(np.triu(mask == 0, k=1)))
        assert flagged == read_json(out / "diagnostics.json")["flagged_count"]

    def test_sampled_mode(self, bundle, tmp_path):
        out = tmp_path / "sampled"
        args = ["filter", "--input", str(bundle / "observed_d.csv"), "--mode", "sampled", "--per-edge", "20"]
        assert main(args + ["--seed", "1", "--out", str(out)]) == 0
        assert read_matrix_csv(out / "counts.csv").max() <= 20

    def test_missing_input(self, tmp_path):
        assert main(["filter", "--input", str(tmp_path / "absent.csv"), "--out", str(tmp_path / "f")]) == 2

    def test_asymmetric_input(self, tmp_path):
        path = tmp_path / "asym.csv"
        path.write_text("0,1,2\n1,0,1\n5,1,0\n")
        assert main(["filter", "--input", str(path), "--out", str(tmp_path / "f")]) == 2


class TestEmbed:
    def test_smacof_on_clean_data(self, clean_bundle, tmp_path):
        out = tmp_path / "smacof"
        assert main(["embed", "--input", str(clean_bundle), "--method", "smacof", "--out", str(out)]) == 0
        assert read_json(out / "diagnostics.json")["final_stress"] < 1e-6
        assert read_matrix_csv(out / "embedding.csv").shape == (30, 2)
        assert not (out / "mask.csv").exists()

    def test_tmds_writes_mask(self, bundle, tmp_path):
        out = tmp_path / "tmds"
        assert main(["embed", "--input", str(bundle), "--out", str(out)]) == 0
        assert (out / "mask.csv").exists()
        assert "phi_used" in read_json(out / "diagnostics.json")

    def test_fg12_needs_lambda(self, clean_bundle, tmp_path):
        out = tmp_path / "fg12"
        assert main(["embed", "--input", str(clean_bundle), "--method", "fg12", "--out", str(out)]) == 2
        assert not (out / "embedding.csv").exists()

    def test_fg12_huge_lambda(self, bundle, tmp_path):
        out = tmp_path / "fg12"
        args = ["embed", "--input", str(bundle), "--method", "fg12", "--lambda", "1e12", "--out", str(out)]
        assert main(args) == 0
        assert read_json(out / "diagnostics.json")["nonzero_count"] == 0

    def test_sammon_random_init(self, clean_bundle, tmp_path):
        out = tmp_path / "sammon"
        args = ["embed", "--input", str(clean_bundle), "--method", "sammon", "--init", "random", "--seed", "2"]
        assert main(args + ["--dim", "3", "--out", str(out)]) == 0
        assert read_matrix_csv(out / "embedding.csv").shape == (30, 3)


class TestEvaluate:
    def test_report_and_shepard(self, bundle, tmp_path):
        embedded = tmp_path / "tmds"
        assert main(["embed", "--input", str(bundle), "--out", str(embedded)]) == 0
        out = tmp_path / "eval"
        assert main(["evaluate", "--bundle", str(bundle), "--embedding", str(embedded), "--out", str(out)]) == 0

        report = read_json(out / "report.json")
        assert report["embedding_score"]["against"] == "true"
        assert report["embedding_score"]["evaluated_pairs"] == 2415
        assert 0.0 <= report["detection"]["precision"] <= 1.0
        shepard = pd.read_csv(out / "shepard.csv")
        assert len(shepard) == 2415
        assert shepard["flagged"].sum() == report["detection"]["true_positives"] + report["detection"]["false_positives"]

    def test_without_mask(self, clean_bundle, tmp_path):
        embedded = tmp_path / "smacof"
        assert main(["embed", "--input", str(clean_bundle), "--method", "smacof", "--out", str(embedded)]) == 0
        out = tmp_path / "eval"
        args = ["evaluate", "--bundle", str(clean_bundle), "--embedding", str(embedded / "embedding.csv")]
        assert main(args + ["--against", "observed", "--out", str(out)]) == 0
        report = read_json(out / "report.json")
        assert report["detection"] is None
        assert report["embedding_score"]["score"] < 1e-3

    def test_missing_bundle(self, tmp_path):
        args = ["evaluate", "--bundle", str(tmp_path / "none"), "--embedding", str(tmp_path / "e.csv")]
        assert main(args + ["--out", str(tmp_path / "eval")]) == 2


class TestSweep:
    def test_rate_sweep_outputs(self, tmp_path):
        out = tmp_path / "sweep"
        args = ["sweep", "--kind", "rate", "--rates", "0.1", "--n", "20", "--repeats", "2", "--out", str(out)]
        assert main(args) == 0
        rows = pd.read_csv(out / "rate_sweep.csv")
        assert len(rows) == 4
        summary = pd.read_csv(out / "rate_summary.csv")
        assert set(summary["method"]) == {"tmds", "smacof"}
        assert (out / "rate_config.yaml").exists()

    def test_theory_sweep_without_summary(self, tmp_path):
        out = tmp_path / "theory"
        assert main(["sweep", "--kind", "theory", "--dims", "2", "--trials", "10000", "--out", str(out)]) == 0
        assert (out / "theory_sweep.csv").exists()
        assert not (out / "theory_summary.csv").exists()

    def test_config_file(self, tmp_path):
        config = tmp_path / "sweep.yaml"
        config.write_text("seed: 3\nsweep:\n  kind: deformation\n  n: 20\n  repeats: 1\n  log2_factors: [0.0, 2.0]\n")
        out = tmp_path / "deformation"
        assert main(["sweep", "--config", str(config), "--out", str(out)]) == 0
        rows = pd.read_csv(out / "deformation_sweep.csv")
        assert rows["log2_factor"].tolist() == [0.0, 2.0]

    def test_missing_config(self, tmp_path):
        assert main(["sweep", "--config", str(tmp_path / "absent.yaml")]) == 2
