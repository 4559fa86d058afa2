"""Assembly of run reports: the JSON document the CLI emits.

Reports are deterministic (no timestamps; wall-clock time goes to the
log stream only) and every numeric field survives a JSON round trip,
so downstream tooling can diff them.  The document layout is versioned
and described by the bundled JSON schema.
"""

from __future__ import annotations

import hashlib
import json
from datetime import date
from pathlib import Path

import numpy as np

from . import metrics as _metrics
from . import stats as _stats
from .fit import FitResult
from .timeseries import (
    COUNT_VARIABLES,
    CUMULATIVE_VARIABLES,
    Dataset,
    TimeSeries,
    extract_series,
)

REPORT_VERSION = 1


def _num(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def file_sha256(path) -> str:
    digest = hashlib.sha256()
    digest.update(Path(path).read_bytes())
    return digest.hexdigest()


def metadata_fragment(dataset: Dataset, source_sha256: str | None = None) -> dict:
    return {
        "location": dataset.location,
        "date_from": dataset.start_date.isoformat(),
        "date_to": dataset.end_date.isoformat(),
        "n_observations": len(dataset),
        "source_sha256": source_sha256,
    }


def describe_fragment(dataset: Dataset) -> dict:
    """Summary statistics of all four variables, default gap policies."""
    out = {}
    for variable in COUNT_VARIABLES:
        d = _stats.describe(extract_series(dataset, variable))
        out[variable] = {
            "n": d.n,
            "mean": _num(d.mean),
            "sd": _num(d.sd),
            "median": _num(d.median),
            "min": _num(d.min),
            "max": _num(d.max),
            "se": _num(d.se),
        }
    return out


def _ljung_box_entry(values, lags: int, alpha: float) -> dict:
    r = _stats.ljung_box(values, lags)
    if r.p_value < alpha:
        conclusion = (
            f"reject: significant autocorrelation at the {alpha:g} level"
        )
    else:
        conclusion = (
            "fail to reject: cannot reject the null hypothesis that the "
            f"series is random at the {alpha:g} level"
        )
    return {
        "statistic": _num(r.statistic),
        "lags": r.lags,
        "df": r.df,
        "p_value": _num(r.p_value),
        "conclusion": conclusion,
    }


def ljung_box_fragment(series: TimeSeries, lags: int, alpha: float) -> dict:
    """Randomness check on levels and, for cumulative data, differences.

    A cumulative series is close to monotone, so its levels are
    trivially autocorrelated; the day-over-day differences are the
    meaningful randomness check there and both constructions are
    reported side by side.
    """
    out = {"variable": series.label, "levels": _ljung_box_entry(series.y, lags, alpha)}
    if series.label in CUMULATIVE_VARIABLES:
        out["first_differences"] = _ljung_box_entry(np.diff(series.y), lags, alpha)
        out["note"] = (
            "levels of a cumulative series are strongly autocorrelated by "
            "construction; the first-difference entry is the informative one"
        )
    return out


def keenan_fragment(series: TimeSeries, ar_order: int, alpha: float) -> dict:
    r = _stats.keenan_test(series.y, ar_order)
    if r.p_value < alpha:
        conclusion = f"reject linearity at the {alpha:g} level"
    else:
        conclusion = f"fail to reject linearity at the {alpha:g} level"
    return {
        "variable": series.label,
        "statistic": _num(r.statistic),
        "ar_order": r.ar_order,
        "df1": r.df1,
        "df2": r.df2,
        "p_value": _num(r.p_value),
        "conclusion": conclusion,
    }


def evaluation_fragment(report: _metrics.EvaluationReport) -> dict:
    out = {
        "mse": _num(report.mse),
        "r_squared": _num(report.r_squared),
        "mape": _num(report.mape),
        "mape_percent": _num(report.mape * 100.0),
        "n": report.n,
    }
    if report.split is not None:
        train_end, (t_lo, t_hi) = report.split
        out["split"] = {"train_end": train_end, "t_range": [t_lo, t_hi]}
    return out


def fit_fragment(
    result: FitResult,
    series: TimeSeries,
    train: TimeSeries | None = None,
    test: TimeSeries | None = None,
) -> dict:
    """Fit summary plus full-window and optional holdout evaluations.

    When a train/test split is supplied the fit is assumed to have run
    on the training part; the full-window entry still evaluates the
    curve against every observation.
    """
    full = _metrics.evaluate(series.y, result.predict(series.t.astype(float)))
    out = {
        "model": result.model_kind,
        "params": {k: _num(v) for k, v in result.params_dict.items()},
        "rss": _num(result.rss),
        "iterations": result.iterations,
        "converged": result.converged,
        "evaluation": {"full_window": evaluation_fragment(full)},
    }
    if train is not None and test is not None:
        split = (int(test.t[0]), (int(test.t[0]), int(test.t[-1])))
        holdout = _metrics.evaluate(
            test.y, result.predict(test.t.astype(float)), split=split
        )
        out["evaluation"]["holdout"] = evaluation_fragment(holdout)
    return out


def build_report(
    metadata: dict,
    descriptive: dict | None = None,
    tests: dict | None = None,
    fits: list[dict] | None = None,
    charts: list[str] | None = None,
) -> dict:
    report = {"report_version": REPORT_VERSION, "metadata": metadata}
    if descriptive is not None:
        report["descriptive_stats"] = descriptive
    if tests is not None:
        report["tests"] = tests
    if fits is not None:
        report["fits"] = fits
    if charts is not None:
        report["charts"] = charts
    return report


def write_report(report: dict, path) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    Path(path).write_text(text, encoding="utf-8")
