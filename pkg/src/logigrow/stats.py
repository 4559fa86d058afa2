"""Descriptive statistics and time-series diagnostic tests.

Provides the summary table statistics, the Ljung-Box portmanteau test
of joint autocorrelation, and Keenan's one-degree test for
nonlinearity, together with the chi-square and F survival functions
their p-values need.  The survival functions are built on the
regularized incomplete gamma and beta functions, evaluated by a power
series or a continued fraction depending on the argument region (the
usual crossover x < a + 1 for the gamma), good to well below 1e-10
absolute error in the ranges used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptySeries,
    LagOutOfRange,
    SingularRegression,
    TooShort,
    ZeroVariance,
)
from .timeseries import TimeSeries

DEFAULT_LJUNG_BOX_LAGS = 10
DEFAULT_KEENAN_ORDER = 4  # ~ n**(1/4) for a year of daily data

_MAX_ITER = 600
_REL_EPS = 1e-16
_TINY = 1e-300


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    mean: float
    sd: float
    median: float
    min: float
    max: float
    se: float


@dataclass(frozen=True)
class LjungBoxResult:
    statistic: float
    lags: int
    df: int
    p_value: float


@dataclass(frozen=True)
class KeenanResult:
    statistic: float
    ar_order: int
    df1: int
    df2: int
    p_value: float


def _values_of(series) -> np.ndarray:
    if isinstance(series, TimeSeries):
        return series.y
    return np.asarray(series, dtype=np.float64)


def describe(series) -> DescriptiveStats:
    """Mean, sample sd (n-1 denominator), median, min, max and se.

    The standard error is sd / sqrt(n) exactly; the median of an even
    count is the midpoint of the two central order statistics.
    """
    y = _values_of(series)
    n = int(y.size)
    if n == 0:
        raise EmptySeries("cannot describe an empty series")
    sd = float(np.std(y, ddof=1)) if n > 1 else 0.0
    return DescriptiveStats(
        n=n,
        mean=float(np.mean(y)),
        sd=sd,
        median=float(np.median(y)),
        min=float(np.min(y)),
        max=float(np.max(y)),
        se=sd / math.sqrt(n),
    )


def autocorrelation(values, k: int) -> float:
    """Sample autocorrelation at lag k with the biased denominator.

    rho_k = sum_{t=k+1..n} (y_t - ybar)(y_{t-k} - ybar) / sum (y - ybar)^2
    """
    y = _values_of(values)
    n = y.size
    if not 0 <= k < n:
        raise LagOutOfRange(f"lag {k} outside [0, {n})")
    centred = y - np.mean(y)
    denom = float(centred @ centred)
    if denom == 0.0:
        raise ZeroVariance("autocorrelation undefined for a constant series")
    if k == 0:
        return 1.0
    return float(centred[k:] @ centred[:-k]) / denom


def ljung_box(values, h: int = DEFAULT_LJUNG_BOX_LAGS) -> LjungBoxResult:
    """Portmanteau test of the first h autocorrelations being zero.

    Q = n (n + 2) * sum_{k=1..h} rho_k^2 / (n - k), compared against a
    chi-square with h degrees of freedom.
    """
    y = _values_of(values)
    n = y.size
    if h < 1:
        raise LagOutOfRange("need at least one lag")
    if n <= h:
        raise TooShort(f"need more than h={h} observations, got {n}")
    q = 0.0
    for k in range(1, h + 1):
        rho = autocorrelation(y, k)
        q += rho * rho / (n - k)
    q *= n * (n + 2.0)
    return LjungBoxResult(
        statistic=float(q), lags=h, df=h, p_value=chi_square_sf(q, h)
    )


def keenan_test(values, m: int = DEFAULT_KEENAN_ORDER) -> KeenanResult:
    """Keenan's one-degree test for nonlinearity against an AR(m) null.

    Three regressions: (i) y_t on {1, y_{t-1}, ..., y_{t-m}} keeping
    fitted values and residuals e_t; (ii) the squared fitted values on
    the same regressors keeping residuals xi_t; (iii) e_t on xi_t
    through the origin, giving eta = sum(e*xi)/sqrt(sum(xi^2)).  Then

        F = eta^2 * (n - 2m - 2) / (sum(e^2) - eta^2)

    is F(1, n - 2m - 2) distributed under linearity.
    """
    y = _values_of(values)
    n = y.size
    if m < 1:
        raise ValueError("AR order m must be >= 1")
    if n <= 2 * m + 2:
        raise TooShort(f"need n > 2m + 2 = {2 * m + 2} observations, got {n}")
    centred = y - np.mean(y)
    if float(centred @ centred) == 0.0:
        raise ZeroVariance("nonlinearity test undefined for a constant series")

    rows = n - m
    design = np.ones((rows, m + 1))
    for j in range(1, m + 1):
        design[:, j] = y[m - j : n - j]
    response = y[m:]

    coef, _, rank, _ = np.linalg.lstsq(design, response, rcond=None)
    if rank < m + 1:
        raise SingularRegression("lag matrix is rank deficient")
    fitted = design @ coef
    resid = response - fitted

    coef2, _, _, _ = np.linalg.lstsq(design, fitted**2, rcond=None)
    xi = fitted**2 - design @ coef2
    xi_norm_sq = float(xi @ xi)
    if xi_norm_sq <= 1e-12 * max(float(fitted @ fitted) ** 2, 1.0):
        raise SingularRegression(
            "squared fitted values are collinear with the lag matrix"
        )

    eta = float(resid @ xi) / math.sqrt(xi_norm_sq)
    rss = float(resid @ resid)
    df2 = n - 2 * m - 2
    denom = rss - eta * eta
    if denom <= 0.0:
        raise SingularRegression("degenerate residual decomposition")
    f_stat = eta * eta * df2 / denom
    return KeenanResult(
        statistic=float(f_stat),
        ar_order=m,
        df1=1,
        df2=df2,
        p_value=f_sf(f_stat, 1, df2),
    )


# --- special functions -------------------------------------------------

def _lower_gamma_series(a: float, x: float) -> float:
    # P(a, x) for x < a + 1: power series around 0
    term = 1.0 / a
    total = term
    denom = a
    for _ in range(_MAX_ITER):
        denom += 1.0
        term *= x / denom
        total += term
        if abs(term) < abs(total) * _REL_EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _upper_gamma_contfrac(a: float, x: float) -> float:
    # Q(a, x) for x >= a + 1: continued fraction, modified Lentz
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _REL_EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _regularized_gamma_q(a: float, x: float) -> float:
    if x < 0 or a <= 0:
        raise ValueError("need x >= 0 and a > 0")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _lower_gamma_series(a, x)
    return _upper_gamma_contfrac(a, x)


def chi_square_sf(x: float, df: int) -> float:
    """Chi-square survival function Q(df/2, x/2)."""
    if x < 0:
        raise ValueError("chi-square statistic must be >= 0")
    if df < 1:
        raise ValueError("degrees of freedom must be >= 1")
    return min(max(_regularized_gamma_q(0.5 * df, 0.5 * x), 0.0), 1.0)


def _betacf(a: float, b: float, x: float) -> float:
    # continued fraction for the incomplete beta, modified Lentz
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _REL_EPS:
            break
    return h


def _regularized_beta(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_sf(x: float, df1: int, df2: int) -> float:
    """F distribution survival function via the regularized beta."""
    if x < 0:
        raise ValueError("F statistic must be >= 0")
    if df1 < 1 or df2 < 1:
        raise ValueError("degrees of freedom must be >= 1")
    if x == 0.0:
        return 1.0
    z = df2 / (df2 + df1 * x)
    return min(max(_regularized_beta(0.5 * df2, 0.5 * df1, z), 0.0), 1.0)
