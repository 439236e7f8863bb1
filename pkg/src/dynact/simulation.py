"""Deterministic stepwise outlier simulation.

A Gaussian channel vector is sampled once, then its largest entry is pushed
up in fixed steps; each frame is layer-normalized. The modified channel is
the labeled outlier and supplies the (x, y) points the activation fits use.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from dynact.core_math import layer_norm
from dynact.rng import CounterRng

CSV_HEADER = ["s", "channel", "x", "y", "is_outlier"]


class EmptyOutliers(ValueError):
    """Scenario has no modified frames (s_max = 0), so no outlier points exist."""


@dataclass(frozen=True)
class SimulationConfig:
    channels: int = 100
    sigma: float = 2.0
    mu: float = 0.0
    step: float = 5.0
    s_max: int = 9
    seed: int = 0

    def __post_init__(self):
        if self.channels < 2:
            raise ValueError(f"channels must be >= 2, got {self.channels}")
        if not (self.sigma > 0):
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if not (self.step > 0):
            raise ValueError(f"step must be > 0, got {self.step}")
        if self.s_max < 0:
            raise ValueError(f"s_max must be >= 0, got {self.s_max}")


@dataclass(frozen=True)
class Frame:
    s: int
    x: np.ndarray
    y: np.ndarray


@dataclass(frozen=True)
class OutlierScenario:
    base_sample: np.ndarray
    outlier_index: int
    frames: tuple[Frame, ...]


def sample_base(config: SimulationConfig) -> np.ndarray:
    """C Gaussian draws N(mu, sigma^2) from the counter-based stream for this seed."""
    rng = CounterRng(config.seed, "sample_base")
    return config.mu + config.sigma * rng.normals(config.channels)


def run_scenario(config: SimulationConfig) -> OutlierScenario:
    """Frames s = 0..s_max; frame s has x_o = base_o + step * s, y = layer_norm(x).

    The outlier channel o is the argmax of the base sample (lowest index on
    ties) and stays fixed across frames; steps apply to the base value, not
    cumulatively.
    """
    base = sample_base(config)
    o = int(np.argmax(base))
    frames = []
    for s in range(config.s_max + 1):
        x = base.copy()
        x[o] += config.step * s
        frames.append(Frame(s=s, x=x, y=layer_norm(x)))
    return OutlierScenario(base_sample=base, outlier_index=o, frames=tuple(frames))


def outlier_points(scenario: OutlierScenario) -> list[tuple[float, float]]:
    """(x_o, y_o) of every modified frame s = 1..s_max, one point per frame."""
    o = scenario.outlier_index
    pts = [
        (float(f.x[o]), float(f.y[o]))
        for f in scenario.frames
        if f.s >= 1
    ]
    if not pts:
        raise EmptyOutliers("scenario has s_max = 0; no outlier frames")
    return pts


def scenario_to_csv(scenario: OutlierScenario) -> str:
    """Serialize as `s,channel,x,y,is_outlier` rows with round-trip float text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    o = scenario.outlier_index
    for frame in scenario.frames:
        for k in range(frame.x.size):
            flag = 1 if (k == o and frame.s >= 1) else 0
            writer.writerow([frame.s, k, repr(float(frame.x[k])), repr(float(frame.y[k])), flag])
    return buf.getvalue()


def write_scenario_csv(scenario: OutlierScenario, path: str | Path) -> None:
    Path(path).write_text(scenario_to_csv(scenario), encoding="utf-8")


def read_points_csv(path: str | Path) -> tuple[list[tuple[float, float]], int | None]:
    """Read fit inputs from CSV.

    Accepts either a scenario CSV (header s,channel,x,y,is_outlier; rows with
    is_outlier=1 are taken) or a plain x,y CSV. Returns (points, channels)
    where channels is inferred from a scenario CSV and None otherwise.
    Raises ValueError with the offending row number on malformed input.
    """
    text = Path(path).read_text(encoding="utf-8")
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty CSV")
    header = [h.strip().lower() for h in rows[0]]
    points: list[tuple[float, float]] = []
    if header == CSV_HEADER:
        channels = 0
        for n, row in enumerate(rows[1:], start=2):
            if len(row) != 5:
                raise ValueError(f"row {n}: expected 5 columns, got {len(row)}")
            try:
                channel = int(row[1])
                x, y = float(row[2]), float(row[3])
                flag = int(row[4])
            except ValueError as exc:
                raise ValueError(f"row {n}: {exc}") from exc
            channels = max(channels, channel + 1)
            if flag:
                points.append((x, y))
        return points, channels
    if header == ["x", "y"]:
        start, data_rows = 2, rows[1:]
    else:
        start, data_rows = 1, rows
    for n, row in enumerate(data_rows, start=start):
        if len(row) != 2:
            raise ValueError(f"row {n}: expected 2 columns, got {len(row)}")
        try:
            points.append((float(row[0]), float(row[1])))
        except ValueError as exc:
            raise ValueError(f"row {n}: {exc}") from exc
    return points, None
