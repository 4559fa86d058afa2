"""Verhulst logistic growth models.

Two families are provided.  The plain family solves

    dP/dt = a * P * (1 - P / E)

whose closed form is ``P(t) = E * P0 / (exp(-a t) * (E - P0) + P0)``.
The offset family shifts the whole sigmoid by a baseline ``b``:

    dP/dt = a * (P - b) * (1 - (P - b) / E)

so that a series which starts from a non-zero plateau can be modelled
without distorting the growth phase.  Substituting Q = P - b reduces
the offset equation to the plain one, hence its closed form is the
plain solution in Q plus ``b``.

All evaluators are overflow-safe: the naive closed form computes
``exp(-a t)`` which leaves double range once ``|a t|`` exceeds ~709,
so the implementation only ever exponentiates non-positive numbers and
saturates smoothly to the correct limit (E, 0, or the baseline).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LOGISTIC_PARAM_NAMES = ("a", "E", "P0")
OFFSET_PARAM_NAMES = ("a", "E", "b", "P0")


@dataclass(frozen=True)
class LogisticParams:
    """Growth rate ``a`` (1/day), capacity ``E`` and start value ``P0``."""

    a: float
    E: float
    P0: float

    def __post_init__(self):
        if not np.isfinite(self.a):
            raise ValueError("growth rate a must be finite")
        if not (self.E > 0):
            raise ValueError("carrying capacity E must be > 0")
        if not (self.P0 > 0):
            raise ValueError("initial value P0 must be > 0")


@dataclass(frozen=True)
class OffsetLogisticParams:
    """Offset family: capacity ``E`` sits above the baseline ``b``."""

    a: float
    E: float
    b: float
    P0: float

    def __post_init__(self):
        if not np.isfinite(self.a):
            raise ValueError("growth rate a must be finite")
        if not (self.E > 0):
            raise ValueError("carrying capacity E must be > 0")
        if self.b < 0:
            raise ValueError("baseline b must be >= 0")
        if not (self.P0 > self.b):
            raise ValueError("initial value P0 must exceed the baseline b")


def logistic_rhs(P, params: LogisticParams):
    """Right-hand side a*P*(1 - P/E) of the plain logistic equation."""
    return params.a * P * (1.0 - P / params.E)


def offset_rhs(P, params: OffsetLogisticParams):
    """Right-hand side a*(P-b)*(1 - (P-b)/E) of the offset equation."""
    q = P - params.b
    return params.a * q * (1.0 - q / params.E)


def _core_solution(t, a, E, q0):
    """Closed-form logistic displacement, safe for any ``a * t``.

    With r = (E - q0)/q0 the solution is E / (1 + r*exp(-a t)).  For
    a*t >= 0 that form is evaluated directly; for a*t < 0 numerator and
    denominator are multiplied by exp(a t) first.  Either way only
    exp(-|a t|) is computed, which cannot overflow, and underflow to 0
    lands exactly on the saturation limits.
    """
    t = np.asarray(t, dtype=np.float64)
    s = a * t
    em = np.exp(-np.abs(s))
    r = (E - q0) / q0
    with np.errstate(divide="ignore", invalid="ignore"):
        forward = E / (1.0 + r * em)
        backward = E * em / (em + r)
    return np.where(s >= 0.0, forward, backward)


def _core_gradient(t, a, E, q0):
    """Partials of the core solution w.r.t. (a, E, q0), overflow-safe.

    Writing D = exp(-a t)*(E - q0) + q0 the textbook derivatives are

        dP/da  = E*q0*t*exp(-a t)*(E - q0) / D^2
        dP/dE  = q0^2 * (1 - exp(-a t)) / D^2
        dP/dq0 = E^2 * exp(-a t) / D^2

    which are rearranged per sign of a*t so that only exp(-|a t|)
    appears.
    """
    t = np.asarray(t, dtype=np.float64)
    s = a * t
    em = np.exp(-np.abs(s))

    with np.errstate(over="ignore", invalid="ignore"):
        # a*t >= 0: use D directly, exp(-a t) = em <= 1.
        d_fwd = q0 + em * (E - q0)
        da_fwd = E * q0 * t * em * (E - q0) / d_fwd**2
        de_fwd = q0**2 * (1.0 - em) / d_fwd**2
        dq_fwd = E**2 * em / d_fwd**2

        # a*t < 0: multiply through by exp(a t) = em; D = D2 / em with
        # D2 = (E - q0) + q0*em, and the same shapes reappear.
        d_bwd = (E - q0) + q0 * em
        da_bwd = E * q0 * t * em * (E - q0) / d_bwd**2
        de_bwd = q0**2 * em * (em - 1.0) / d_bwd**2
        dq_bwd = E**2 * em / d_bwd**2

    fwd = s >= 0.0
    return (
        np.where(fwd, da_fwd, da_bwd),
        np.where(fwd, de_fwd, de_bwd),
        np.where(fwd, dq_fwd, dq_bwd),
    )


def _as_given(t, value):
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(value)
    return value


def logistic_solution(t, params: LogisticParams):
    """Closed-form trajectory of the plain logistic equation at ``t``.

    Accepts scalars or arrays of days; negative ``t`` is legal because
    the closed form is defined there.
    """
    return _as_given(t, _core_solution(t, params.a, params.E, params.P0))


def offset_solution(t, params: OffsetLogisticParams):
    """Closed-form trajectory of the offset family: baseline plus core."""
    q0 = params.P0 - params.b
    return _as_given(
        t, params.b + _core_solution(t, params.a, params.E, q0)
    )


def exponential_approx(t, P0: float, a: float):
    """Early-phase approximation ``P0 * exp(a t)`` (valid while P << E)."""
    if not P0 > 0:
        raise ValueError("P0 must be > 0")
    return _as_given(t, P0 * np.exp(a * np.asarray(t, dtype=np.float64)))


def solution_gradient(t, params):
    """Jacobian columns of the closed form w.r.t. each parameter.

    Returns an array of shape ``(len(t), k)`` whose columns follow
    ``LOGISTIC_PARAM_NAMES`` for :class:`LogisticParams` and
    ``OFFSET_PARAM_NAMES`` for :class:`OffsetLogisticParams`.  The
    offset chain rule gives dP/dP0 = dQ/dQ0 and dP/db = 1 - dQ/dQ0.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if isinstance(params, LogisticParams):
        da, de, dq = _core_gradient(t_arr, params.a, params.E, params.P0)
        return np.column_stack([da, de, dq])
    if isinstance(params, OffsetLogisticParams):
        q0 = params.P0 - params.b
        da, de, dq = _core_gradient(t_arr, params.a, params.E, q0)
        return np.column_stack([da, de, 1.0 - dq, dq])
    raise TypeError(f"unsupported parameter type {type(params)!r}")
