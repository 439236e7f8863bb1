"""Deterministic counter-based PRNG with Box-Muller Gaussian sampling.

The raw stream is the splitmix64 output sequence: the value at counter i is
``finalize(key + (i + 1) * GOLDEN)`` with the standard 64-bit finalizer.
Streams are keyed by (seed, stream name) so independent consumers derived
from the same seed never overlap. Given the same seed and IEEE-754 doubles,
the same draws come out on every run.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

_TWO_POW_MINUS_53 = 2.0**-53
_TWO_PI = 2.0 * math.pi


def _finalize(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _fnv1a64(text: str) -> int:
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK
    return h


class CounterRng:
    """Counter-indexed splitmix64 stream with uniform and Gaussian draws."""

    def __init__(self, seed: int, stream: str = ""):
        key = int(seed) & _MASK
        if stream:
            key ^= _fnv1a64(stream)
        self._key = _finalize(key)
        self._counter = 0

    def u64(self) -> int:
        self._counter += 1
        return _finalize(self._key + self._counter * _GOLDEN)

    def uniform_open(self) -> float:
        """Uniform in (0, 1]; safe under log()."""
        return ((self.u64() >> 11) + 1) * _TWO_POW_MINUS_53

    def uniform_halfopen(self) -> float:
        """Uniform in [0, 1)."""
        return (self.u64() >> 11) * _TWO_POW_MINUS_53

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.uniform_halfopen()

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high] (modulo bias negligible for small ranges)."""
        if high < low:
            raise ValueError("empty range")
        return low + self.u64() % (high - low + 1)

    def normal(self) -> float:
        """Standard normal via Box-Muller; consumes two counter values."""
        u1 = self.uniform_open()
        u2 = self.uniform_halfopen()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(_TWO_PI * u2)

    def normals(self, n: int):
        import numpy as np

        return np.array([self.normal() for _ in range(n)], dtype=np.float64)
