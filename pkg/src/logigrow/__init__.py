"""Logistic growth-curve fitting and diagnostics for epidemic time series.

The library ingests OWID-schema CSV data, runs descriptive statistics
and the Ljung-Box / Keenan diagnostics, fits Verhulst logistic and
offset-logistic closed forms by Levenberg-Marquardt, scores the fits
with MSE / R-squared / MAPE (including retrospective forecast splits),
and renders deterministic SVG charts.
"""

from .chart import ChartSpec, render_chart
from .fit import (
    FitConfig,
    FitResult,
    LOGISTIC,
    OFFSET_LOGISTIC,
    default_bounds,
    fit_logistic,
    fit_offset_logistic,
    initial_guess,
    levenberg_marquardt,
    predict,
)
from .metrics import EvaluationReport, evaluate, mape, mse, r_squared
from .model import (
    LogisticParams,
    OffsetLogisticParams,
    exponential_approx,
    logistic_rhs,
    logistic_solution,
    offset_rhs,
    offset_solution,
    solution_gradient,
)
from .solver import Trajectory, rk4_integrate
from .stats import (
    DescriptiveStats,
    KeenanResult,
    LjungBoxResult,
    autocorrelation,
    chi_square_sf,
    describe,
    f_sf,
    keenan_test,
    ljung_box,
)
from .timeseries import (
    Dataset,
    Observation,
    TimeSeries,
    extract_series,
    parse_owid_csv,
    train_test_split,
)

__version__ = "0.1.0"

__all__ = [
    "ChartSpec",
    "Dataset",
    "DescriptiveStats",
    "EvaluationReport",
    "FitConfig",
    "FitResult",
    "KeenanResult",
    "LjungBoxResult",
    "LOGISTIC",
    "LogisticParams",
    "OFFSET_LOGISTIC",
    "Observation",
    "OffsetLogisticParams",
    "TimeSeries",
    "Trajectory",
    "autocorrelation",
    "chi_square_sf",
    "default_bounds",
    "describe",
    "evaluate",
    "exponential_approx",
    "extract_series",
    "f_sf",
    "fit_logistic",
    "fit_offset_logistic",
    "initial_guess",
    "keenan_test",
    "levenberg_marquardt",
    "ljung_box",
    "logistic_rhs",
    "logistic_solution",
    "mape",
    "mse",
    "offset_rhs",
    "offset_solution",
    "parse_owid_csv",
    "predict",
    "r_squared",
    "render_chart",
    "rk4_integrate",
    "solution_gradient",
    "train_test_split",
]
