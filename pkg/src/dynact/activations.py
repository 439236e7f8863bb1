"""Closed-form dynamic activation functions.

Scaled DyT and the DyISRU family are the element-wise counterparts of layer
normalization: both saturate at +-sqrt(C-1) for a C-channel vector. All
functions accept scalars or numpy arrays in ``x`` and broadcast element-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dynact.core_math import as_channel_vector, _check_index

# Lower clamp for beta when constructing DyISRUParams from a channel-exact
# value: beta = 0 is analytically valid but collapses DyISRU to a step.
BETA_MIN = 1e-18


@dataclass(frozen=True)
class DyTParams:
    """Slope alpha > 0 and channel count C >= 2 for scaled DyT."""

    alpha: float
    channels: int

    def __post_init__(self):
        if not (self.alpha > 0):
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.channels < 2:
            raise ValueError(f"channels must be >= 2, got {self.channels}")


@dataclass(frozen=True)
class DyISRUParams:
    """Denominator offset beta > 0, channel count C >= 2, and center mu."""

    beta: float
    channels: int
    mu: float = 0.0

    def __post_init__(self):
        if not (self.beta > 0):
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if self.channels < 2:
            raise ValueError(f"channels must be >= 2, got {self.channels}")


def scaled_dyt(x, p: DyTParams):
    """sqrt(C-1) * tanh(alpha * x): odd, strictly increasing, |.| < sqrt(C-1)."""
    return math.sqrt(p.channels - 1) * np.tanh(p.alpha * np.asarray(x, dtype=np.float64))


def dyisru_general(x, p: DyISRUParams):
    """sqrt(C-1) * (x - mu) / sqrt(beta + (x - mu)^2)."""
    u = np.asarray(x, dtype=np.float64) - p.mu
    return math.sqrt(p.channels - 1) * u / np.sqrt(p.beta + u * u)


def dyisru(x, p: DyISRUParams):
    """The outlier form sqrt(C-1) * x / sqrt(beta + x^2); requires mu = 0."""
    if p.mu != 0.0:
        raise ValueError("dyisru requires mu = 0; use dyisru_general for mu != 0")
    return dyisru_general(x, p)


def isru(x, alpha: float):
    """Inverse square root unit x / sqrt(1 + alpha * x^2), alpha > 0."""
    if not (alpha > 0):
        raise ValueError(f"alpha must be > 0, got {alpha}")
    xa = np.asarray(x, dtype=np.float64)
    return xa / np.sqrt(1.0 + alpha * xa * xa)


def beta_exact(x, i: int) -> float:
    """Channel-exact beta making DyISRU-general reproduce layer_norm on channel i.

    Equals (C-1) * var_excluding_i - var, where var_excluding_i uses divisor
    C-1 over the channels k != i. Always >= 0 analytically (it is a squared
    integration constant); may be exactly 0, so clamp with BETA_MIN before
    building DyISRUParams from it.
    """
    arr = as_channel_vector(x)
    c = arr.size
    i = _check_index(i, c)
    dev = arr - arr.mean()
    sq = dev * dev
    var = float(np.mean(sq))
    # (C-1) * var_excluding_i is just the deviation sum of squares without i
    return float(np.sum(sq) - sq[i] - var)
