"""Goodness-of-fit and forecast accuracy metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, LengthMismatch, ZeroActual, ZeroVariance


@dataclass(frozen=True)
class EvaluationReport:
    """MSE, R-squared and MAPE over one evaluation window.

    ``mape`` is stored as a fraction (percentage / 100); presentation
    layers render both forms.  ``split`` optionally records the
    train-end index and the evaluated t range.
    """

    mse: float
    r_squared: float
    mape: float
    n: int
    split: tuple[int, tuple[int, int]] | None = None


def _paired(actual, predicted):
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.shape != p.shape:
        raise LengthMismatch(f"lengths differ: {a.size} vs {p.size}")
    if a.size == 0:
        raise EmptyInput("metrics need at least one point")
    return a, p


def mse(actual, predicted) -> float:
    """Mean of squared differences between actual and predicted."""
    a, p = _paired(actual, predicted)
    d = a - p
    return float(np.mean(d * d))


def r_squared(actual, predicted) -> float:
    """1 - SS_residual / SS_total; may be negative for bad models."""
    a, p = _paired(actual, predicted)
    if a.size < 2:
        raise EmptyInput("R-squared needs at least two points")
    centred = a - np.mean(a)
    ss_total = float(centred @ centred)
    if ss_total == 0.0:
        raise ZeroVariance("R-squared undefined for a constant actual series")
    resid = a - p
    return 1.0 - float(resid @ resid) / ss_total


def mape(actual, predicted) -> float:
    """Mean absolute percentage error, returned as a fraction."""
    a, p = _paired(actual, predicted)
    if np.any(a == 0.0):
        raise ZeroActual("MAPE undefined when an actual value is zero")
    return float(np.mean(np.abs((a - p) / a)))


def evaluate(actual, predicted, split=None) -> EvaluationReport:
    """Bundle the three metrics over one window."""
    a, p = _paired(actual, predicted)
    return EvaluationReport(
        mse=mse(a, p),
        r_squared=r_squared(a, p),
        mape=mape(a, p),
        n=int(a.size),
        split=split,
    )
