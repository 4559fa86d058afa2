"""Fixed-step classical Runge-Kutta integrator.

Serves as an independent numerical oracle for the closed-form logistic
solutions: the right-hand sides are smooth and cheap, so a plain RK4
with a fixed step is simple, deterministic, and accurate far beyond
what the cross-checks require.  The state may be a scalar or a 1-d
array of independent systems integrated in lock step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteState

DEFAULT_STEP = 0.01


@dataclass(frozen=True)
class Trajectory:
    """Integration output: times and matching state values."""

    t_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if t.ndim != 1 or v.shape[0] != t.shape[0]:
            raise ValueError("t_grid must be 1-d and match values length")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("t_grid must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("trajectory values must be finite")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return int(self.t_grid.size)


def _rk4_step(rhs, t, y, h):
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * h * k1)
    k3 = rhs(y + 0.5 * h * k2)
    k4 = rhs(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_integrate(rhs, P0, t_start, t_end, step=DEFAULT_STEP) -> Trajectory:
    """Integrate an autonomous ODE ``dP/dt = rhs(P)`` with classical RK4.

    The grid runs from ``t_start`` to exactly ``t_end``: the final step
    is shortened when the interval is not a whole multiple of ``step``,
    so trajectories align with closed-form evaluation grids.  Raises
    :class:`NonFiniteState` (with the step index) if the state leaves
    the finite floats.
    """
    if step <= 0:
        raise ValueError("step must be > 0")
    if not t_end > t_start:
        raise ValueError("t_end must be > t_start")

    span = t_end - t_start
    n_full = int(np.floor(span / step + 1e-12))
    remainder = span - n_full * step
    if remainder < step * 1e-9:
        remainder = 0.0

    y = np.asarray(P0, dtype=np.float64)
    scalar = y.ndim == 0
    times = [t_start]
    states = [y]
    t = t_start
    total_steps = n_full + (1 if remainder else 0)
    for k in range(total_steps):
        h = step if k < n_full else remainder
        y = _rk4_step(rhs, t, y, h)
        t = t_start + (k + 1) * step if k < n_full else t_end
        if not np.all(np.isfinite(y)):
            raise NonFiniteState(
                f"state became non-finite at step {k + 1} (t = {t:.6g})",
                step_index=k + 1,
            )
        times.append(t)
        states.append(y)

    values = np.array(states, dtype=np.float64)
    if scalar:
        values = values.reshape(len(times))
    return Trajectory(t_grid=np.array(times, dtype=np.float64), values=values)
