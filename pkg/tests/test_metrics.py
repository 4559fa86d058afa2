import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logigrow.errors import EmptyInput, LengthMismatch, ZeroActual, ZeroVariance
from logigrow.metrics import EvaluationReport, evaluate, mape, mse, r_squared

finite_vec = st.lists(
    st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
    min_size=2,
    max_size=40,
)


class TestMse:
    def test_perfect_fit(self):
        assert mse([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0

    def test_hand_value(self):
        assert mse([1, 2, 3], [1, 2, 4]) == pytest.approx(1.0 / 3.0)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            mse([1, 2], [1, 2, 3])

    def test_empty(self):
        with pytest.raises(EmptyInput):
            mse([], [])

    @settings(max_examples=50, deadline=None)
    @given(finite_vec, st.floats(0.1, 100.0))
    def test_symmetry_and_scale_law(self, a, c):
        p = [v + 1.0 for v in a]
        assert mse(a, p) == pytest.approx(mse(p, a))
        assert mse([c * v for v in a], [c * v for v in p]) == pytest.approx(
            c * c * mse(a, p), rel=1e-9
        )


class TestRSquared:
    def test_perfect_fit(self):
        assert r_squared([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 1.0

    def test_mean_model_scores_zero(self):
        a = [1.0, 2.0, 3.0, 10.0]
        m = float(np.mean(a))
        assert r_squared(a, [m] * 4) == pytest.approx(0.0)

    def test_negative_for_bad_model(self):
        assert r_squared([1.0, 2.0, 3.0], [10.0, -10.0, 30.0]) < 0.0

    def test_constant_actual_rejected(self):
        with pytest.raises(ZeroVariance):
            r_squared([5.0, 5.0, 5.0], [1.0, 2.0, 3.0])

    @settings(max_examples=50, deadline=None)
    @given(finite_vec, st.floats(0.5, 3.0), st.floats(-100.0, 100.0))
    def test_affine_invariance(self, a, alpha, beta):
        if np.std(a) < 1e-6:
            return
        p = [v + 0.5 for v in a]
        base = r_squared(a, p)
        mapped = r_squared(
            [alpha * v + beta for v in a], [alpha * v + beta for v in p]
        )
        assert mapped == pytest.approx(base, rel=1e-6, abs=1e-9)

    def test_cross_metric_identity(self):
        rng = np.random.default_rng(3)
        a = rng.uniform(10, 20, size=50)
        p = a + rng.normal(0, 1, size=50)
        n = a.size
        ss_total = float(np.sum((a - a.mean()) ** 2))
        assert r_squared(a, p) == pytest.approx(
            1.0 - mse(a, p) * n / ss_total, rel=1e-12
        )


class TestMape:
    def test_perfect_fit(self):
        assert mape([1.0, 2.0], [1.0, 2.0]) == 0.0

    def test_hand_value_is_fraction(self):
        assert mape([100.0], [99.0]) == pytest.approx(0.01)

    def test_zero_actual_rejected(self):
        with pytest.raises(ZeroActual):
            mape([0.0, 1.0], [1.0, 1.0])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            mape([1.0], [1.0, 2.0])

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(st.floats(1.0, 1e5), min_size=1, max_size=30),
        st.floats(0.01, 1000.0),
    )
    def test_scale_invariance(self, a, c):
        p = [v * 1.1 for v in a]
        assert mape([c * v for v in a], [c * v for v in p]) == pytest.approx(
            mape(a, p), rel=1e-9
        )


class TestEvaluate:
    def test_bundles_all_metrics(self):
        a = [10.0, 20.0, 30.0]
        p = [11.0, 19.0, 33.0]
        rep = evaluate(a, p, split=(2, (2, 4)))
        assert isinstance(rep, EvaluationReport)
        assert rep.mse == pytest.approx(mse(a, p))
        assert rep.r_squared == pytest.approx(r_squared(a, p))
        assert rep.mape == pytest.approx(mape(a, p))
        assert rep.n == 3
        assert rep.split == (2, (2, 4))
