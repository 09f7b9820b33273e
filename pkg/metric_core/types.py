"""
Core Numeric Types

Immutable containers for dissimilarities, embeddings, masks and weights.
Each validates its invariants on construction and freezes its array, so
instances can be shared freely between solvers and worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _frozen(array: np.ndarray, dtype) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def _require_square(values: np.ndarray, name: str) -> int:
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError(f"{name} must be a square N×N matrix, got shape {values.shape}")
    if values.shape[0] < 1:
        raise ValueError(f"{name} must have at least one element")
    return values.shape[0]


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric, nonnegative N×N dissimilarities with a zero diagonal.

    Values need not be metric; only symmetry, finiteness, nonnegativity and
    the zero diagonal are enforced.
    """

    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values, float)
        _require_square(values, "DistanceMatrix")
        if not np.all(np.isfinite(values)):
            raise ValueError("DistanceMatrix entries must be finite")
        if np.any(values < 0):
            raise ValueError("DistanceMatrix entries must be nonnegative")
        if not np.array_equal(values, values.T):
            raise ValueError("DistanceMatrix must be symmetric")
        if np.any(np.diag(values) != 0):
            raise ValueError("DistanceMatrix diagonal must be zero")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_array(cls, array, rel_tol: float = 1e-9) -> DistanceMatrix:
        """Build from a nearly symmetric array, averaging the two triangles.

        Raises ValueError when any pair disagrees by more than ``rel_tol``
        relative to the larger of the two entries.
        """
        values = np.asarray(array, dtype=float)
        _require_square(values, "DistanceMatrix")
        if not np.all(np.isfinite(values)):
            raise ValueError("DistanceMatrix entries must be finite")
        gap = np.abs(values - values.T)
        scale = np.maximum(np.abs(values), np.abs(values.T))
        bad = gap > rel_tol * scale
        if np.any(bad):
            i, j = map(int, np.argwhere(bad)[0])
            raise ValueError(
                f"Matrix is not symmetric within rel_tol={rel_tol}: "
                f"entry ({i},{j})={values[i, j]!r} vs ({j},{i})={values[j, i]!r}"
            )
        symmetric = 0.5 * (values + values.T)
        np.fill_diagonal(symmetric, 0.0)
        return cls(symmetric)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def edge_total(self) -> int:
        return self.n * (self.n - 1) // 2

    def upper(self) -> np.ndarray:
        """Off-diagonal upper-triangle entries in row-major (i<j) order."""
        return self.values[np.triu_indices(self.n, k=1)]

    def replaced(self, pairs: list[tuple[int, int]], new_values) -> DistanceMatrix:
        """Return a copy with the given unordered pairs set symmetrically."""
        values = np.array(self.values, copy=True)
        for (i, j), v in zip(pairs, np.atleast_1d(new_values)):
            values[i, j] = values[j, i] = v
        return DistanceMatrix(values)


@dataclass(frozen=True, eq=False)
class Embedding:
    """N points in a d-dimensional target space."""

    coords: np.ndarray

    def __post_init__(self):
        coords = _frozen(self.coords, float)
        if coords.ndim != 2 or coords.shape[0] < 1 or coords.shape[1] < 1:
            raise ValueError(f"Embedding coords must be N×d with N, d ≥ 1, got shape {coords.shape}")
        if not np.all(np.isfinite(coords)):
            raise ValueError("Embedding coordinates must be finite")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric nonnegative per-pair stress weights; the diagonal is ignored."""

    w: np.ndarray

    def __post_init__(self):
        w = _frozen(self.w, float)
        _require_square(w, "WeightMatrix")
        if not np.all(np.isfinite(w)):
            raise ValueError("WeightMatrix entries must be finite")
        if np.any(w < 0):
            raise ValueError("WeightMatrix entries must be nonnegative")
        if not np.array_equal(w, w.T):
            raise ValueError("WeightMatrix must be symmetric")
        object.__setattr__(self, "w", w)

    @classmethod
    def ones(cls, n: int) -> WeightMatrix:
        w = np.ones((n, n))
        np.fill_diagonal(w, 0.0)
        return cls(w)

    @property
    def n(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True, eq=False)
class FilterMask:
    """Symmetric boolean N×N matrix: True keeps an edge, False marks an outlier."""

    keep: np.ndarray

    def __post_init__(self):
        keep = _frozen(self.keep, bool)
        _require_square(keep, "FilterMask")
        if not np.array_equal(keep, keep.T):
            raise ValueError("FilterMask must be symmetric")
        if not np.all(np.diag(keep)):
            raise ValueError("FilterMask diagonal must be True")
        object.__setattr__(self, "keep", keep)

    @classmethod
    def all_kept(cls, n: int) -> FilterMask:
        return cls(np.ones((n, n), dtype=bool))

    @property
    def n(self) -> int:
        return self.keep.shape[0]

    @property
    def n_flagged(self) -> int:
        return int(np.count_nonzero(~self.keep[np.triu_indices(self.n, k=1)]))

    def flagged_pairs(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(~self.keep, k=1))
        return [(int(i), int(j)) for i, j in zip(rows, cols)]

    def to_weights(self) -> WeightMatrix:
        """0/1 weights: kept pairs weigh 1, flagged pairs 0."""
        w = self.keep.astype(float)
        np.fill_diagonal(w, 0.0)
        return WeightMatrix(w)
