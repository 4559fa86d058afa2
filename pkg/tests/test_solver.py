import numpy as np
import pytest

from logigrow.errors import NonFiniteState
from logigrow.model import LogisticParams, logistic_rhs, logistic_solution
from logigrow.solver import Trajectory, rk4_integrate


class TestRk4:
    def test_zero_field_constant(self):
        traj = rk4_integrate(lambda P: 0.0 * P, 5.0, 0.0, 3.0, 0.1)
        assert np.allclose(traj.values, 5.0)

    def test_known_exponential_solution(self):
        traj = rk4_integrate(lambda P: 0.1 * P, 1.0, 0.0, 10.0, 0.01)
        assert traj.values[-1] == pytest.approx(np.e, abs=1e-8)

    def test_matches_logistic_closed_form(self):
        p = LogisticParams(a=0.1, E=1000.0, P0=10.0)
        traj = rk4_integrate(lambda P: logistic_rhs(P, p), 10.0, 0.0, 100.0, 0.01)
        closed = logistic_solution(traj.t_grid, p)
        rel = np.abs(traj.values - closed) / np.abs(closed)
        assert rel.max() < 1e-8

    def test_lands_exactly_on_end(self):
        traj = rk4_integrate(lambda P: P * 0.0, 1.0, 0.0, 1.05, 0.1)
        assert traj.t_grid[-1] == 1.05
        assert len(traj) == 12  # 10 full steps + shortened final step + start

    def test_no_spurious_final_step_on_exact_multiple(self):
        traj = rk4_integrate(lambda P: P * 0.0, 1.0, 0.0, 1.0, 0.1)
        assert len(traj) == 11
        assert traj.t_grid[-1] == 1.0

    def test_vector_state(self):
        p0 = np.array([1.0, 2.0, 3.0])
        traj = rk4_integrate(lambda P: 0.5 * P, p0, 0.0, 1.0, 0.001)
        assert traj.values.shape == (1001, 3)
        assert np.allclose(traj.values[-1], p0 * np.exp(0.5), rtol=1e-10)

    def test_equilibrium_start_stays_flat(self):
        p = LogisticParams(a=0.2, E=777.0, P0=777.0)
        traj = rk4_integrate(lambda P: logistic_rhs(P, p), 777.0, 0.0, 50.0, 0.01)
        assert np.max(np.abs(traj.values - 777.0)) < 1e-12 * 777.0

    def test_fourth_order_convergence(self):
        p = LogisticParams(a=0.5, E=100.0, P0=5.0)
        errors = {}
        for step in (0.1, 0.05, 0.025):
            traj = rk4_integrate(lambda P: logistic_rhs(P, p), 5.0, 0.0, 20.0, step)
            closed = logistic_solution(traj.t_grid, p)
            errors[step] = np.max(np.abs(traj.values - closed))
        assert errors[0.1] / errors[0.05] >= 12.0
        assert errors[0.05] / errors[0.025] >= 12.0

    def test_nonfinite_state_reports_step(self):
        # dP/dt = P^2 from 1 blows up at t = 1
        with pytest.raises(NonFiniteState) as err:
            rk4_integrate(lambda P: P * P, 1.0, 0.0, 2.0, 0.001)
        assert err.value.step_index is not None
        assert err.value.step_index > 0

    def test_rejects_bad_step_and_interval(self):
        with pytest.raises(ValueError):
            rk4_integrate(lambda P: P, 1.0, 0.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            rk4_integrate(lambda P: P, 1.0, 1.0, 1.0, 0.1)


class TestTrajectory:
    def test_validates_lengths(self):
        with pytest.raises(ValueError):
            Trajectory(t_grid=np.array([0.0, 1.0]), values=np.array([1.0]))

    def test_validates_monotone_grid(self):
        with pytest.raises(ValueError):
            Trajectory(t_grid=np.array([0.0, 0.0]), values=np.array([1.0, 1.0]))

    def test_validates_finite_values(self):
        with pytest.raises(ValueError):
            Trajectory(t_grid=np.array([0.0, 1.0]), values=np.array([1.0, np.inf]))
