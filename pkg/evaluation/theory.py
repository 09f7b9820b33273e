"""
Distance-Distribution Theory

Distances between uniform points of the unit hypercube are approximately
normal with mean √(d/6) and variance 7/120; adjacent distances (sharing a
point) have a small constant covariance. If an outlier edge is drawn from
the same distribution as the true distances, a triangle holding it is broken
with probability

    P = 2·Φ(−μ / (√2.73·σ)) + Φ(−μ / (√3.27·σ))

The Monte-Carlo estimators below validate these closed forms. They split the
trials into blocks seeded from one SeedSequence so parallel and sequential
runs aggregate to the same number.
"""

from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np
from scipy.special import ndtr

from triangle_filter import broken_sides

from .models import MonteCarloEstimate, TheoryParams
from .parallel import run_tasks

logger = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 50_000
Z_95 = 1.96
SHORT_PAIR_VARIANCE_FACTOR = 2.73
LONG_PAIR_VARIANCE_FACTOR = 3.27


def normal_cdf(x: float) -> float:
    """Standard normal CDF Φ(x)."""
    if not math.isfinite(x):
        raise ValueError(f"normal_cdf needs a finite argument, got {x}")
    return float(ndtr(x))


def break_probability_theory(dim: int) -> float:
    """Closed-form probability that a triangle holding one random edge is broken."""
    params = TheoryParams.for_dim(dim)
    short = normal_cdf(-params.mu / (math.sqrt(SHORT_PAIR_VARIANCE_FACTOR) * params.sigma))
    long = normal_cdf(-params.mu / (math.sqrt(LONG_PAIR_VARIANCE_FACTOR) * params.sigma))
    return 2.0 * short + long


def _block_sizes(trials: int, block_size: int) -> list[int]:
    if trials < 1:
        raise ValueError(f"trials must be ≥ 1, got {trials}")
    if block_size < 1:
        raise ValueError(f"block_size must be ≥ 1, got {block_size}")
    full, rest = divmod(trials, block_size)
    return [block_size] * full + ([rest] if rest else [])


def _blocks(
    fn: Callable[[tuple], np.ndarray],
    dim: int,
    trials: int,
    seed: int,
    block_size: int,
    workers: int,
    *extra,
) -> np.ndarray:
    """Sum per-block statistic vectors over SeedSequence-spawned blocks."""
    if dim < 1:
        raise ValueError(f"dim must be ≥ 1, got {dim}")
    sizes = _block_sizes(trials, block_size)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    tasks = [(child, size, dim, *extra) for child, size in zip(children, sizes)]
    return np.sum(run_tasks(fn, tasks, workers=workers), axis=0)


def _uniform(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    return rng.random((size, dim))


def _distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.linalg.norm(a - b, axis=1)


def _break_block(task: tuple) -> np.ndarray:
    child, size, dim, clean = task
    rng = np.random.default_rng(child)
    p1, p2, p3 = (_uniform(rng, size, dim) for _ in range(3))
    d12 = _distance(p1, p2)
    d23 = _distance(p2, p3)
    if clean:
        d13 = _distance(p1, p3)
    else:
        d13 = _distance(_uniform(rng, size, dim), _uniform(rng, size, dim))
    return np.array([np.count_nonzero(broken_sides(d12, d23, d13))], dtype=float)


def break_probability_mc(
    dim: int,
    trials: int,
    seed: int = 0,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
    clean: bool = False,
) -> MonteCarloEstimate:
    """
    Fraction of broken triangles when D(p1, p3) is replaced by a random distance.

    Returns the estimate with a 95% normal-approximation binomial halfwidth.
    ``clean=True`` keeps the true D(p1, p3) as a control.
    """
    broken = _blocks(_break_block, dim, trials, seed, block_size, workers, clean)[0]
    p = broken / trials
    halfwidth = Z_95 * math.sqrt(p * (1.0 - p) / trials)
    logger.info(f"Break probability MC (dim={dim}, trials={trials}): {p:.5f} ± {halfwidth:.5f}")
    return MonteCarloEstimate(estimate=float(p), halfwidth=float(halfwidth), trials=trials)


def _pair_block(task: tuple) -> np.ndarray:
    child, size, dim, independent = task
    rng = np.random.default_rng(child)
    p1, p2, p3 = (_uniform(rng, size, dim) for _ in range(3))
    x = _distance(p1, p2)
    y = _distance(_uniform(rng, size, dim), p3) if independent else _distance(p2, p3)
    return np.array([x.sum(), y.sum(), (x * y).sum()])


def distance_covariance_mc(
    dim: int,
    trials: int,
    seed: int = 0,
    independent: bool = False,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
) -> float:
    """
    Sample covariance of D(p1, p2) and D(p2, p3).

    ``independent=True`` pairs D(p1, p2) with D(p4, p3) instead, a control
    whose covariance is zero.
    """
    if trials < 2:
        raise ValueError(f"Covariance needs at least 2 trials, got {trials}")
    sx, sy, sxy = _blocks(_pair_block, dim, trials, seed, block_size, workers, independent)
    return float((sxy - sx * sy / trials) / (trials - 1))


def _moment_block(task: tuple) -> np.ndarray:
    child, size, dim = task
    rng = np.random.default_rng(child)
    d = _distance(_uniform(rng, size, dim), _uniform(rng, size, dim))
    return np.array([d.sum(), (d * d).sum()])


def distance_moments_mc(
    dim: int,
    pairs: int,
    seed: int = 0,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
) -> tuple[float, float]:
    """Sample mean and variance of the distance between two uniform points."""
    if pairs < 2:
        raise ValueError(f"Moments need at least 2 pairs, got {pairs}")
    s1, s2 = _blocks(_moment_block, dim, pairs, seed, block_size, workers)
    mean = s1 / pairs
    variance = (s2 - pairs * mean * mean) / (pairs - 1)
    return float(mean), float(variance)
