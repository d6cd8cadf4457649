"""Extrapolation helpers for refinement sequences."""

from typing import Sequence

import numpy as np

from ..core.exceptions import ValidationError


def neville_at_zero(x: Sequence[float], y: Sequence[float]) -> float:
    """Value at 0 of the interpolating polynomial through (x_i, y_i)."""
    xs = np.asarray(x, dtype=float)
    table = np.asarray(y, dtype=float).copy()
    if xs.shape != table.shape or xs.size == 0:
        raise ValidationError("Samples must be non-empty and aligned", field="x", value=xs.size)
    if np.unique(xs).size != xs.size:
        raise ValidationError("Sample abscissae must be distinct", field="x", value=xs.tolist())
    n = xs.size
    for level in range(1, n):
        for i in range(n - level):
            j = i + level
            table[i] = (xs[j] * table[i] - xs[i] * table[i + 1]) / (xs[j] - xs[i])
    return float(table[0])


def richardson(coarse: np.ndarray, fine: np.ndarray, order: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Combine values from meshes h and h/2 converging like h^order.

    Returns the extrapolated values and |fine - coarse| / (2^order - 1)
    as the error estimate.
    """
    coarse = np.asarray(coarse, dtype=float)
    fine = np.asarray(fine, dtype=float)
    factor = 2.0**order - 1.0
    change = fine - coarse
    return fine + change / factor, np.abs(change) / factor


def linear_fit(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """Least-squares line y = slope * x + intercept."""
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if xs.size < 2 or np.ptp(xs) == 0.0:
        raise ValidationError("A fit needs at least two distinct abscissae", field="x", value=xs.size)
    slope, intercept = np.polyfit(xs, ys, 1)
    return float(slope), float(intercept)
