"""
Experiment Sweeps

Each sweep expands a parameter grid into independent, seeded instances, runs
them (optionally on a process pool) and returns one pandas row per instance
in grid order. ``summarize`` reduces the rows to the mean curve.

Instance seeds derive from (global seed, sweep name, repeat index), so the
same repeat sees the same base scenario at every grid point.
"""

from __future__ import annotations

import logging
import time
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd

from mds_solvers import EmbedMethod, SolverConfig, embed_with, fg12_embed, smacof, tmds_embed
from metric_core import pairwise_distances
from synthetic import (
    LognormalCenter,
    build_scenario,
    deform_edge,
    derive_seed,
    inject_outliers,
    outlier_count,
    sample_hypercube,
)
from triangle_filter import FilterMode, default_triangles_per_edge, tmds_filter

from .detection import detection_report
from .parallel import run_tasks
from .scoring import embedding_score
from .theory import break_probability_mc, break_probability_theory

logger = logging.getLogger(__name__)

SWEEP_KINDS = ("rate", "deformation", "sigma", "theory", "sampling", "lambda", "timing")


def _check_grid(name: str, grid: Sequence[Any]):
    if len(grid) == 0:
        raise ValueError(f"{name} grid is empty")


def _check_repeats(repeats: int):
    if repeats < 1:
        raise ValueError(f"repeats must be ≥ 1, got {repeats}")


def summarize(rows: pd.DataFrame, by: Sequence[str], values: Sequence[str]) -> pd.DataFrame:
    """Mean and standard deviation of ``values`` per group, groups in sorted order."""
    grouped = rows.groupby(list(by), sort=True)[list(values)]
    summary = grouped.agg(["mean", "std", "count"])
    summary.columns = [f"{value}_{stat}" for value, stat in summary.columns]
    return summary.reset_index()


# =============================================================================
# Score sweeps (outlier rate, log-normal σ)
# =============================================================================


def _score_instance(task: dict[str, Any]) -> list[dict[str, Any]]:
    scenario = build_scenario(
        "hypercube",
        n=task["n"],
        dim=task["dim"],
        outlier_rate=task["rate"],
        sigma=task["sigma"],
        lognormal_center=task["center"],
        seed=task["seed"],
    )
    rows = []
    for method in task["methods"]:
        outcome = embed_with(
            method,
            scenario.observed_D,
            dim=task["dim"],
            cfg=task["cfg"],
            mode=task["mode"],
            lam=task["lam"],
        )
        row = {
            "rate": task["rate"],
            "sigma": task["sigma"],
            "repeat": task["repeat"],
            "seed": task["seed"],
            "method": outcome.method.value,
            "outliers": len(scenario.outlier_set),
            "score": embedding_score(scenario.true_D, outcome.embedding),
            "precision": np.nan,
            "recall": np.nan,
            "flagged": np.nan,
        }
        if outcome.mask is not None:
            report = detection_report(outcome.mask, scenario.outlier_set)
            row.update(precision=report.precision, recall=report.recall, flagged=outcome.mask.n_flagged)
        rows.append(row)
    return rows


def _score_sweep(
    name: str,
    grid: list[tuple[float, float]],
    n: int,
    dim: int,
    repeats: int,
    seed: int,
    methods: Sequence[str],
    mode: Optional[FilterMode],
    cfg: Optional[SolverConfig],
    lam: Optional[float],
    workers: int,
    center: LognormalCenter = LognormalCenter.MEAN,
) -> pd.DataFrame:
    _check_repeats(repeats)
    methods = [EmbedMethod(m) for m in methods]
    tasks = [
        {
            "rate": rate,
            "sigma": sigma,
            "repeat": repeat,
            "seed": derive_seed(seed, name, repeat),
            "n": n,
            "dim": dim,
            "methods": methods,
            "mode": mode,
            "cfg": cfg,
            "lam": lam,
            "center": center,
        }
        for rate, sigma in grid
        for repeat in range(repeats)
    ]
    logger.info(f"{name} sweep: {len(tasks)} instances × {len(methods)} methods, {workers} workers")
    rows = [row for result in run_tasks(_score_instance, tasks, workers) for row in result]
    return pd.DataFrame.from_records(rows)


def rate_sweep(
    rates: Sequence[float] = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35),
    n: int = 100,
    dim: int = 2,
    repeats: int = 10,
    seed: int = 0,
    methods: Sequence[str] = ("tmds", "smacof"),
    mode: Optional[FilterMode] = None,
    cfg: Optional[SolverConfig] = None,
    lam: Optional[float] = None,
    workers: int = 1,
) -> pd.DataFrame:
    """
    Embedding score (and tmds precision/recall) against outlier rate.

    Columns: rate, sigma, repeat, seed, method, outliers, score, precision,
    recall, flagged.
    """
    _check_grid("rate", rates)
    for rate in rates:
        if not 0.0 <= rate <= 1.0:
            raise ValueError(f"Outlier rates must be in [0, 1], got {rate}")
    return _score_sweep("rate", [(r, 0.0) for r in rates], n, dim, repeats, seed, methods, mode, cfg, lam, workers)


def sigma_sweep(
    sigmas: Sequence[float] = (0.3, 0.6, 1.0),
    n: int = 100,
    dim: int = 2,
    repeats: int = 10,
    seed: int = 0,
    methods: Sequence[str] = ("tmds", "smacof"),
    mode: Optional[FilterMode] = None,
    cfg: Optional[SolverConfig] = None,
    lam: Optional[float] = None,
    workers: int = 1,
    center: LognormalCenter | str = LognormalCenter.MEAN,
) -> pd.DataFrame:
    """
    Embedding score against log-normal distortion σ; same columns as ``rate_sweep``.

    ``center`` picks whether the factor's mean or its median is 1. With
    mean-centred noise the filter trims the inflated side of the spread and
    the TMDS embedding shrinks; with median-centred noise the same trimming
    removes the inflation bias that plain SMACOF keeps.
    """
    _check_grid("sigma", sigmas)
    for sigma in sigmas:
        if sigma < 0:
            raise ValueError(f"σ values must be ≥ 0, got {sigma}")
    grid = [(0.0, s) for s in sigmas]
    return _score_sweep(
        "sigma", grid, n, dim, repeats, seed, methods, mode, cfg, lam, workers, center=LognormalCenter(center)
    )


# =============================================================================
# Single-edge deformation
# =============================================================================


def _deformation_instance(task: dict[str, Any]) -> dict[str, Any]:
    n, dim, seed = task["n"], task["dim"], task["seed"]
    D = pairwise_distances(sample_hypercube(n, dim, seed=derive_seed(seed, "points")), 2)
    background = outlier_count(n, task["background_rate"])
    D, _ = inject_outliers(D, background, seed=derive_seed(seed, "outliers"))

    rng = np.random.default_rng(derive_seed(seed, "edge"))
    i, j = sorted(int(v) for v in rng.choice(n, size=2, replace=False))
    deformed = deform_edge(D, i, j, task["log2_factor"])
    result = tmds_filter(deformed, mode=task["mode"])

    detected = not bool(result.mask.keep[i, j])
    others_flagged = result.mask.n_flagged - int(detected)
    return {
        "log2_factor": task["log2_factor"],
        "repeat": task["repeat"],
        "seed": seed,
        "i": i,
        "j": j,
        "detected": int(detected),
        "flagged": result.mask.n_flagged,
        "false_positive_rate": others_flagged / (D.edge_total - 1),
        "phi": result.phi,
        "fallback": result.fallback,
    }


def deformation_sweep(
    log2_factors: Sequence[float] = (-3.0, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0),
    n: int = 100,
    dim: int = 2,
    repeats: int = 50,
    seed: int = 0,
    mode: Optional[FilterMode] = None,
    background_rate: float = 0.0,
    workers: int = 1,
) -> pd.DataFrame:
    """
    Whether one deformed edge is flagged, against log₂(deformed / true).

    Each repeat deforms a random edge of a fresh hypercube sample, optionally
    on top of ``background_rate`` replacement outliers. Factor 0 is the
    untouched control, so its detection rate is the false-positive base rate.
    """
    _check_grid("log2_factor", log2_factors)
    _check_repeats(repeats)
    tasks = [
        {
            "log2_factor": float(factor),
            "repeat": repeat,
            "seed": derive_seed(seed, "deformation", repeat),
            "n": n,
            "dim": dim,
            "mode": mode,
            "background_rate": background_rate,
        }
        for factor in log2_factors
        for repeat in range(repeats)
    ]
    logger.info(f"deformation sweep: {len(tasks)} instances, {workers} workers")
    return pd.DataFrame.from_records(run_tasks(_deformation_instance, tasks, workers))


# =============================================================================
# Closed form vs Monte-Carlo
# =============================================================================


def theory_table(
    dims: Sequence[int] = (2, 6, 10),
    trials: int = 1_000_000,
    seed: int = 0,
    workers: int = 1,
) -> pd.DataFrame:
    """Closed-form and simulated break probability per dimension."""
    _check_grid("dim", dims)
    rows = []
    for index, dim in enumerate(dims):
        theory = break_probability_theory(dim)
        mc = break_probability_mc(dim, trials, seed=derive_seed(seed, "theory", index), workers=workers)
        rows.append(
            {
                "dim": dim,
                "theory": theory,
                "monte_carlo": mc.estimate,
                "halfwidth": mc.halfwidth,
                "abs_error": abs(mc.estimate - theory),
                "trials": trials,
            }
        )
    return pd.DataFrame.from_records(rows)


# =============================================================================
# Sampled counting adequacy
# =============================================================================


def _sampling_instance(task: dict[str, Any]) -> list[dict[str, Any]]:
    scenario = build_scenario("hypercube", n=task["n"], dim=task["dim"], outlier_rate=task["rate"], seed=task["seed"])
    modes: list[tuple[str, int, FilterMode]] = [("exact", task["n"] - 2, FilterMode.exact())]
    for k in task["triangles_per_edge"]:
        modes.append(("sampled", k, FilterMode.sampled(k, seed=derive_seed(task["seed"], "sampling", k))))

    rows = []
    for label, k, mode in modes:
        result = tmds_filter(scenario.observed_D, mode=mode)
        report = detection_report(result.mask, scenario.outlier_set)
        rows.append(
            {
                "mode": label,
                "triangles_per_edge": k,
                "repeat": task["repeat"],
                "seed": task["seed"],
                "outliers": len(scenario.outlier_set),
                "detected": report.true_positives,
                "flagged": result.mask.n_flagged,
                "precision": report.precision,
                "recall": report.recall,
            }
        )
    return rows


def sampling_sweep(
    triangles_per_edge: Sequence[int] = (5, 10, 20, 45),
    n: int = 70,
    dim: int = 2,
    rate: float = 0.10,
    repeats: int = 10,
    seed: int = 0,
    workers: int = 1,
) -> pd.DataFrame:
    """Detection with sampled counting at several triangles-per-edge, with an exact row per repeat."""
    _check_grid("triangles_per_edge", triangles_per_edge)
    _check_repeats(repeats)
    if any(k < 1 for k in triangles_per_edge):
        raise ValueError(f"triangles_per_edge values must be ≥ 1, got {list(triangles_per_edge)}")
    logger.info(
        f"sampling sweep: N={n}, rate={rate}, rule-of-thumb K="
        f"{default_triangles_per_edge(n, outlier_count(n, rate))}"
    )
    tasks = [
        {
            "n": n,
            "dim": dim,
            "rate": rate,
            "repeat": repeat,
            "seed": derive_seed(seed, "sampling", repeat),
            "triangles_per_edge": [int(k) for k in triangles_per_edge],
        }
        for repeat in range(repeats)
    ]
    rows = [row for result in run_tasks(_sampling_instance, tasks, workers) for row in result]
    return pd.DataFrame.from_records(rows)


# =============================================================================
# FG12 λ sensitivity
# =============================================================================


def _lambda_instance(task: dict[str, Any]) -> dict[str, Any]:
    scenario = build_scenario(
        "hypercube",
        n=task["n"],
        dim=task["dim"],
        outlier_count_override=task["outliers"],
        side=task["side"],
        seed=task["seed"],
    )
    cfg = SolverConfig(init="random", seed=derive_seed(task["seed"], "init", task["init"]))
    result = fg12_embed(scenario.observed_D, dim=task["dim"], lam=task["lam"], cfg=cfg)
    flagged = set(result.flagged_pairs())
    return {
        "lam": task["lam"],
        "init": task["init"],
        "seed": task["seed"],
        "nonzero_count": result.nonzero_count,
        "true_positives": len(flagged & scenario.outlier_set),
        "objective": result.objective_trace[-1],
        "iterations": result.iterations,
        "score": embedding_score(scenario.true_D, result.embedding),
    }


def lambda_sweep(
    lambdas: Sequence[float] = (0.5, 1.0, 2.0, 4.0, 8.0),
    n: int = 50,
    dim: int = 2,
    outliers: int = 100,
    inits: int = 3,
    side: float = 10.0,
    seed: int = 0,
    workers: int = 1,
) -> pd.DataFrame:
    """
    FG12 nonzero-offset count against λ from several random starts.

    All instances share one scenario; only λ and the starting configuration
    vary. λ is compared with squared residuals, so its meaning depends on
    the box ``side``.
    """
    _check_grid("lambda", lambdas)
    if inits < 1:
        raise ValueError(f"inits must be ≥ 1, got {inits}")
    scenario_seed = derive_seed(seed, "lambda")
    tasks = [
        {
            "lam": float(lam),
            "init": init,
            "seed": scenario_seed,
            "n": n,
            "dim": dim,
            "outliers": outliers,
            "side": side,
        }
        for lam in lambdas
        for init in range(inits)
    ]
    logger.info(f"lambda sweep: {len(tasks)} FG12 runs, {workers} workers")
    return pd.DataFrame.from_records(run_tasks(_lambda_instance, tasks, workers))


# =============================================================================
# Wall clock
# =============================================================================


def timing_sweep(
    sizes: Sequence[int] = (150, 300, 600),
    dim: int = 2,
    rate: float = 0.10,
    seed: int = 0,
    lam: Optional[float] = None,
) -> pd.DataFrame:
    """
    Seconds spent per phase for growing N, run sequentially.

    Phases: smacof, filter (exact counting and threshold), tmds, and fg12
    when ``lam`` is given. Absolute numbers depend on the machine; the ratio
    ``tmds / smacof`` is the comparable quantity.
    """
    _check_grid("size", sizes)
    rows = []
    for index, n in enumerate(sizes):
        scenario = build_scenario("hypercube", n=n, dim=dim, outlier_rate=rate, seed=derive_seed(seed, "timing", index))
        D = scenario.observed_D
        phases = {
            "smacof": lambda: smacof(D, dim=dim),
            "filter": lambda: tmds_filter(D),
            "tmds": lambda: tmds_embed(D, dim=dim),
        }
        if lam is not None:
            phases["fg12"] = lambda: fg12_embed(D, dim=dim, lam=lam)
        for phase, run in phases.items():
            start = time.perf_counter()
            run()
            seconds = time.perf_counter() - start
            rows.append({"n": n, "phase": phase, "seconds": seconds})
            logger.info(f"timing: N={n} {phase} {seconds:.3f}s")
    return pd.DataFrame.from_records(rows)
