"""Layer normalization and its dynamic element-wise counterparts.

Provides LN/RMSNorm with exact analytic derivatives, the scaled DyT and
DyISRU activation families, numerical identity checks, a deterministic
outlier simulation, and scalar least-squares fitting of the activation
parameters.
"""

from dynact.core_math import (
    DegenerateVariance,
    IndexOutOfRange,
    NormStats,
    layer_norm,
    ln_derivative_analytic,
    norm_stats,
    rms_norm,
)
from dynact.activations import (
    BETA_MIN,
    DyISRUParams,
    DyTParams,
    beta_exact,
    dyisru,
    dyisru_general,
    isru,
    scaled_dyt,
)
from dynact.fitting import (
    BracketFailure,
    FitDataset,
    FitResult,
    fit_dyisru,
    fit_dyt,
    mirror_augment,
    residual_stats,
)
from dynact.simulation import (
    EmptyOutliers,
    OutlierScenario,
    SimulationConfig,
    outlier_points,
    run_scenario,
    sample_base,
)
from dynact.verification import VerificationReport, run_all_checks

__version__ = "0.1.0"

__all__ = [
    "BETA_MIN",
    "BracketFailure",
    "DegenerateVariance",
    "DyISRUParams",
    "DyTParams",
    "EmptyOutliers",
    "FitDataset",
    "FitResult",
    "IndexOutOfRange",
    "NormStats",
    "OutlierScenario",
    "SimulationConfig",
    "VerificationReport",
    "beta_exact",
    "dyisru",
    "dyisru_general",
    "fit_dyisru",
    "fit_dyt",
    "isru",
    "layer_norm",
    "ln_derivative_analytic",
    "mirror_augment",
    "norm_stats",
    "outlier_points",
    "residual_stats",
    "rms_norm",
    "run_all_checks",
    "run_scenario",
    "sample_base",
    "scaled_dyt",
]
