"""Layer normalization, RMSNorm, channel statistics, and the analytic LN derivative.

All operations act on a single channel vector (one token representation of
length C >= 2) and use population statistics (divisor C). Everything is pure
and 64-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Below this variance (or mean square, for RMSNorm) the input is treated as
# constant and normalization is refused instead of regularized.
VAR_EPSILON = 1e-24


class DegenerateVariance(ValueError):
    """Input vector is constant or near-constant; normalization is undefined."""


class IndexOutOfRange(IndexError):
    """Channel index falls outside [0, C)."""


@dataclass(frozen=True)
class NormStats:
    """Mean and population variance (divisor C) of a channel vector."""

    mean: float
    variance: float


def as_channel_vector(x) -> np.ndarray:
    """Validate and convert to a float64 channel vector (1-D, C >= 2, finite)."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D channel vector, got shape {arr.shape}")
    if arr.size < 2:
        raise ValueError("channel vector needs at least 2 entries")
    if not np.all(np.isfinite(arr)):
        raise ValueError("channel vector entries must be finite")
    return arr


def _check_index(i: int, c: int) -> int:
    i = int(i)
    if not 0 <= i < c:
        raise IndexOutOfRange(f"channel index {i} outside [0, {c})")
    return i


def norm_stats(x) -> NormStats:
    """Mean and population variance of a channel vector."""
    arr = as_channel_vector(x)
    mean = float(arr.mean())
    variance = float(np.mean((arr - mean) ** 2))
    return NormStats(mean=mean, variance=variance)


def layer_norm(x) -> np.ndarray:
    """Center and scale: y_i = (x_i - mean) / sqrt(population variance)."""
    arr = as_channel_vector(x)
    mean = arr.mean()
    var = np.mean((arr - mean) ** 2)
    if var <= VAR_EPSILON:
        raise DegenerateVariance(
            f"variance {var:.3g} is at or below the degeneracy threshold {VAR_EPSILON:.0e}"
        )
    return (arr - mean) / np.sqrt(var)


def rms_norm(x) -> np.ndarray:
    """Scale by the root mean square of the channels; no centering."""
    arr = as_channel_vector(x)
    ms = np.mean(arr**2)
    if ms <= VAR_EPSILON:
        raise DegenerateVariance(
            f"mean square {ms:.3g} is at or below the degeneracy threshold {VAR_EPSILON:.0e}"
        )
    return arr / np.sqrt(ms)


def ln_derivative_analytic(x, i: int) -> float:
    """Closed-form d(layer_norm(x)_i)/dx_i.

    Equals F(x) * (C - 1 - y_i^2) with F(x) = 1 / (C * sqrt(variance)) and
    y = layer_norm(x). Zero exactly when y_i hits the extremum +-sqrt(C-1).
    Channel index ``i`` is 0-based.
    """
    arr = as_channel_vector(x)
    c = arr.size
    i = _check_index(i, c)
    y = layer_norm(arr)
    var = np.mean((arr - arr.mean()) ** 2)
    f = 1.0 / (c * np.sqrt(var))
    return float(f * (c - 1 - y[i] ** 2))
