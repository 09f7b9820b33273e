"""
Evaluation

Detection and embedding scores, Shepard tables, the distance-distribution
theory with its Monte-Carlo checks, and the experiment sweeps.
"""

from .models import DetectionReport, MonteCarloEstimate, ScoreReport, TheoryParams
from .detection import detection_report
from .scoring import SHEPARD_COLUMNS, embedding_score, embedding_score_report, shepard_data
from .theory import (
    break_probability_mc,
    break_probability_theory,
    distance_covariance_mc,
    distance_moments_mc,
    normal_cdf,
)
from .parallel import run_tasks
from .sweeps import (
    SWEEP_KINDS,
    deformation_sweep,
    lambda_sweep,
    rate_sweep,
    sampling_sweep,
    sigma_sweep,
    summarize,
    theory_table,
    timing_sweep,
)

__all__ = [
    "DetectionReport",
    "MonteCarloEstimate",
    "ScoreReport",
    "TheoryParams",
    "detection_report",
    "SHEPARD_COLUMNS",
    "embedding_score",
    "embedding_score_report",
    "shepard_data",
    "break_probability_mc",
    "break_probability_theory",
    "distance_covariance_mc",
    "distance_moments_mc",
    "normal_cdf",
    "run_tasks",
    "SWEEP_KINDS",
    "deformation_sweep",
    "lambda_sweep",
    "rate_sweep",
    "sampling_sweep",
    "sigma_sweep",
    "summarize",
    "theory_table",
    "timing_sweep",
]
