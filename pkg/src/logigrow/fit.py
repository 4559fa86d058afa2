"""Nonlinear least-squares fitting via Levenberg-Marquardt.

Fits the closed-form logistic families to a :class:`~logigrow.timeseries.TimeSeries`
by damped Gauss-Newton steps on the analytic Jacobian.  Residuals are
``y - P(t)`` (data minus model), unweighted.  Steps are projected onto
per-parameter box bounds by clamping, which is adequate for this
well-conditioned problem and keeps the engine deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import model as _model
from .errors import DegenerateSeries, SingularNormalEquations
from .timeseries import TimeSeries

LOGISTIC = "logistic"
OFFSET_LOGISTIC = "offset_logistic"

_PARAM_NAMES = {
    LOGISTIC: _model.LOGISTIC_PARAM_NAMES,
    OFFSET_LOGISTIC: _model.OFFSET_PARAM_NAMES,
}


@dataclass(frozen=True)
class FitConfig:
    """Knobs of the Levenberg-Marquardt loop.

    ``bounds`` is an optional tuple of (lower, upper) pairs, one per
    parameter in family order; ``None`` derives data-driven defaults
    from the series (see :func:`default_bounds`).  An equality bound
    (lower == upper) pins a parameter, which is how the two-parameter
    variant with P0 fixed to the first observation is expressed.
    ``multi_start > 0`` enables seeded random restarts around the
    heuristic start and keeps the best result.
    """

    max_iterations: int = 200
    cost_tolerance: float = 1e-10
    param_tolerance: float = 1e-10
    initial_damping: float = 1e-3
    damping_up: float = 10.0
    damping_down: float = 0.1
    bounds: tuple[tuple[float, float], ...] | None = None
    multi_start: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if min(self.cost_tolerance, self.param_tolerance) <= 0:
            raise ValueError("tolerances must be > 0")
        if not (self.damping_up > 1.0 and 0.0 < self.damping_down < 1.0):
            raise ValueError("damping_up must be > 1 and damping_down in (0, 1)")
        if self.initial_damping <= 0:
            raise ValueError("initial_damping must be > 0")


@dataclass(frozen=True)
class FitResult:
    """Converged parameters plus the evidence trail.

    ``trace`` records (rss, lambda) of the initial state and of every
    accepted step; rss is non-increasing along it.  ``rss`` always
    equals ``residuals @ residuals`` for the final parameters.
    """

    model_kind: str
    params: np.ndarray
    param_names: tuple[str, ...]
    rss: float
    residuals: np.ndarray
    iterations: int
    converged: bool
    trace: tuple[tuple[float, float], ...]

    def __post_init__(self):
        p = np.asarray(self.params, dtype=np.float64).copy()
        r = np.asarray(self.residuals, dtype=np.float64).copy()
        p.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "params", p)
        object.__setattr__(self, "residuals", r)

    @property
    def params_dict(self) -> dict[str, float]:
        return {n: float(v) for n, v in zip(self.param_names, self.params)}

    def to_params(self):
        """Typed parameter object for the model module."""
        if self.model_kind == LOGISTIC:
            return _model.LogisticParams(*map(float, self.params))
        return _model.OffsetLogisticParams(*map(float, self.params))

    def predict(self, t):
        return predict(self.model_kind, self.params, t)


def predict(model_kind: str, theta, t):
    """Evaluate a closed-form family from a raw parameter vector."""
    theta = np.asarray(theta, dtype=np.float64)
    if model_kind == LOGISTIC:
        a, E, P0 = theta
        return _model._as_given(t, _model._core_solution(t, a, E, P0))
    if model_kind == OFFSET_LOGISTIC:
        a, E, b, P0 = theta
        return _model._as_given(t, b + _model._core_solution(t, a, E, P0 - b))
    raise ValueError(f"unknown model kind {model_kind!r}")


def _jacobian(model_kind: str, theta, t):
    if model_kind == LOGISTIC:
        a, E, P0 = theta
        da, de, dq = _model._core_gradient(t, a, E, P0)
        return np.column_stack([da, de, dq])
    a, E, b, P0 = theta
    da, de, dq = _model._core_gradient(t, a, E, P0 - b)
    return np.column_stack([da, de, 1.0 - dq, dq])


def default_bounds(series: TimeSeries, model_kind: str):
    """Data-driven box bounds keeping the closed form finite.

    a in [1e-8, 10]; E in [half the dynamic range, 100 * max(y)];
    b in [0, min(y)]; P0 in (b, max(y)] approximated from below by a
    sliver above zero (the fitter additionally keeps P0 > b after each
    clamp).
    """
    y = series.y
    ymin, ymax = float(np.min(y)), float(np.max(y))
    dyn = ymax - ymin
    if dyn <= 0:
        raise DegenerateSeries("series has no dynamic range")
    a_lo, a_hi = 1e-8, 10.0
    e_lo, e_hi = 0.5 * dyn, 100.0 * ymax
    p0_lo = 1e-9 * max(ymax, 1.0)
    if model_kind == LOGISTIC:
        return ((a_lo, a_hi), (e_lo, e_hi), (p0_lo, ymax))
    return ((a_lo, a_hi), (e_lo, e_hi), (0.0, ymin), (p0_lo, ymax))


def _clamp(theta, lo, hi, model_kind, dyn):
    theta = np.minimum(np.maximum(theta, lo), hi)
    if model_kind == OFFSET_LOGISTIC and theta[3] <= theta[2]:
        # keep P0 strictly above the baseline
        theta[3] = theta[2] + 1e-9 * max(dyn, 1.0)
    return theta


def initial_guess(series: TimeSeries, model_kind: str) -> np.ndarray:
    """Heuristic start values from the data.

    Baseline (offset family only) is min(y) minus a one-count margin so
    the initial displacement stays positive; capacity is 1.05 times the
    dynamic range above the baseline; P0 is the first observation; the
    growth rate comes from an ordinary least-squares line through the
    logit transform ln(Q / (E0 - Q)) against t, clipped to [1e-6, 5].
    """
    if model_kind not in _PARAM_NAMES:
        raise ValueError(f"unknown model kind {model_kind!r}")
    y = series.y
    if len(series) < 4:
        raise DegenerateSeries("need at least 4 points to initialise a fit")
    ymin, ymax = float(np.min(y)), float(np.max(y))
    if ymax <= ymin:
        raise DegenerateSeries("constant series cannot seed a growth model")

    if model_kind == OFFSET_LOGISTIC:
        b0 = max(ymin - 1.0, 0.0)
    else:
        if ymin <= 0:
            raise DegenerateSeries(
                "plain logistic initialisation needs strictly positive values"
            )
        b0 = 0.0
    e0 = 1.05 * (ymax - b0)
    p0 = float(y[0]) if y[0] > b0 else b0 + 1.0

    q = np.clip(y - b0, 0.001 * e0, 0.999 * e0)
    z = np.log(q / (e0 - q))
    slope = float(np.polyfit(series.t.astype(np.float64), z, 1)[0])
    a0 = float(np.clip(slope, 1e-6, 5.0))

    if model_kind == LOGISTIC:
        return np.array([a0, e0, p0])
    return np.array([a0, e0, b0, p0])


def levenberg_marquardt(
    series: TimeSeries,
    model_kind: str,
    init,
    config: FitConfig | None = None,
) -> FitResult:
    """Standard damped least squares on the analytic Jacobian.

    Each iteration solves ``(J'J + lambda * diag(J'J)) delta = J' r``
    and accepts the clamped step only if the residual sum of squares
    decreases (lambda shrinks); otherwise lambda grows and the step is
    retried.  Convergence is declared on a relative rss change below
    ``cost_tolerance`` or a relative step norm below
    ``param_tolerance``.  Hitting ``max_iterations`` returns the best
    state with ``converged=False`` rather than raising.
    """
    config = config or FitConfig()
    names = _PARAM_NAMES[model_kind]
    bounds = config.bounds or default_bounds(series, model_kind)
    if len(bounds) != len(names):
        raise ValueError(f"expected {len(names)} bound pairs, got {len(bounds)}")
    lo = np.array([b[0] for b in bounds], dtype=np.float64)
    hi = np.array([b[1] for b in bounds], dtype=np.float64)
    if len(series) < len(names):
        raise DegenerateSeries("fewer points than parameters")

    t = series.t.astype(np.float64)
    y = series.y
    dyn = float(np.max(y) - np.min(y))

    theta = _clamp(np.asarray(init, dtype=np.float64).copy(), lo, hi, model_kind, dyn)
    r = y - predict(model_kind, theta, t)
    rss = float(r @ r)
    lam = config.initial_damping
    trace = [(rss, lam)]
    converged = False
    iterations = 0

    for iterations in range(1, config.max_iterations + 1):
        jac = _jacobian(model_kind, theta, t)
        jtj = jac.T @ jac
        grad = jac.T @ r
        diag = np.diag(jtj).copy()
        floor = 1e-12 * max(float(np.max(diag)), 1.0)
        diag[diag < floor] = floor

        raises = 0
        accepted = False
        while True:
            try:
                delta = np.linalg.solve(jtj + lam * np.diag(diag), grad)
                solvable = bool(np.all(np.isfinite(delta)))
            except np.linalg.LinAlgError:
                solvable = False
            if not solvable:
                raises += 1
                lam *= config.damping_up
                if raises > 10:
                    raise SingularNormalEquations(
                        "damped normal equations unsolvable after 10 increases"
                    )
                continue

            candidate = _clamp(theta + delta, lo, hi, model_kind, dyn)
            step = candidate - theta
            r_new = y - predict(model_kind, candidate, t)
            rss_new = float(r_new @ r_new)

            if np.isfinite(rss_new) and rss_new < rss:
                rel_drop = (rss - rss_new) / max(rss, 1e-300)
                rel_step = float(np.linalg.norm(step)) / max(
                    float(np.linalg.norm(theta)), 1e-300
                )
                theta, r, rss = candidate, r_new, rss_new
                lam = max(lam * config.damping_down, 1e-15)
                trace.append((rss, lam))
                accepted = True
                if rel_drop < config.cost_tolerance or rel_step < config.param_tolerance:
                    converged = True
                break

            # rejected: a vanishing clamped step means a stationary point
            rel_step = float(np.linalg.norm(step)) / max(
                float(np.linalg.norm(theta)), 1e-300
            )
            if rel_step < config.param_tolerance:
                converged = True
                break
            lam *= config.damping_up
            if lam > 1e15:
                converged = True
                break

        if converged or not accepted:
            break

    return FitResult(
        model_kind=model_kind,
        params=theta,
        param_names=names,
        rss=rss,
        residuals=r,
        iterations=iterations,
        converged=converged,
        trace=tuple((float(a), float(b)) for a, b in trace),
    )


def _run_fit(series: TimeSeries, model_kind: str, config: FitConfig | None) -> FitResult:
    config = config or FitConfig()
    init = initial_guess(series, model_kind)
    best = levenberg_marquardt(series, model_kind, init, config)
    if config.multi_start > 0:
        bounds = config.bounds or default_bounds(series, model_kind)
        lo = np.array([b[0] for b in bounds])
        hi = np.array([b[1] for b in bounds])
        rng = np.random.default_rng(config.seed)
        for _ in range(config.multi_start):
            jitter = init * rng.lognormal(mean=0.0, sigma=0.2, size=init.shape)
            jitter = np.minimum(np.maximum(jitter, lo), hi)
            candidate = levenberg_marquardt(series, model_kind, jitter, config)
            if candidate.rss < best.rss:
                best = candidate
    return best


def fit_logistic(series: TimeSeries, config: FitConfig | None = None) -> FitResult:
    """Heuristic start, then LM, for the three-parameter plain family."""
    return _run_fit(series, LOGISTIC, config)


def fit_offset_logistic(series: TimeSeries, config: FitConfig | None = None) -> FitResult:
    """Heuristic start, then LM, for the four-parameter offset family."""
    return _run_fit(series, OFFSET_LOGISTIC, config)
