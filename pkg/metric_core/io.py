"""
Matrix and Report I/O

CSV matrices have no header: one row per element, comma-separated decimals.
Floats are written at 17 significant digits so they survive a round trip.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from .types import DistanceMatrix

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def read_matrix_csv(path: str | Path) -> np.ndarray:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"CSV not found: {path}")
    try:
        array = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except ValueError as e:
        raise ValueError(f"Malformed CSV {path}: {e}") from e
    return array


def load_distance_csv(path: str | Path, rel_tol: float = 1e-9) -> DistanceMatrix:
    """Load an N×N dissimilarity CSV, validating symmetry and averaging the triangles."""
    D = DistanceMatrix.from_array(read_matrix_csv(path), rel_tol=rel_tol)
    logger.info(f"Loaded {D.n}×{D.n} distance matrix from {path}")
    return D


def load_points_csv(path: str | Path) -> np.ndarray:
    """Load an N×d point-set CSV."""
    return read_matrix_csv(path)


def write_matrix_csv(path: str | Path, array, integer: bool = False) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    array = np.asarray(array)
    if array.ndim == 1:
        array = array[:, None]
    fmt = "%d" if integer else FLOAT_FORMAT
    np.savetxt(path, array.astype(int) if integer else array, fmt=fmt, delimiter=",")
    return path


def write_json(path: str | Path, payload: dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def read_json(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"JSON not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
