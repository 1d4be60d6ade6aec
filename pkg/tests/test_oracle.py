"""Tests for the memoizing, instrumented sampling wrapper."""

import numpy as np
import pytest

from tuckercheb.oracle import InstrumentedOracle, SamplingError


class TestCounting:
    def test_distinct_vs_total(self):
        oracle = InstrumentedOracle(lambda x, y, z: x + y + z)
        oracle.eval_points([0.0, 0.5, 0.0], [0.0] * 3, [0.0] * 3)
        assert oracle.total_calls == 3
        assert oracle.distinct_points == 2
        oracle.eval_points([0.5], [0.0], [0.0])
        assert oracle.total_calls == 4
        assert oracle.distinct_points == 2

    def test_memo_returns_cached_value(self):
        calls = []

        def f(x, y, z):
            calls.append(x.size)
            return x * 0 + 7.0

        oracle = InstrumentedOracle(f)
        a = oracle.eval_points([0.25], [0.5], [0.75])
        b = oracle.eval_points([0.25], [0.5], [0.75])
        assert a[0] == b[0] == 7.0
        assert calls == [1]

    def test_exact_key_no_tolerance(self):
        oracle = InstrumentedOracle(lambda x, y, z: x)
        oracle.eval_points([0.1], [0.0], [0.0])
        oracle.eval_points([0.1 + 1e-18], [0.0], [0.0])
        # 0.1 + 1e-18 rounds to 0.1 exactly in binary64: same key
        assert oracle.distinct_points == 1

    def test_per_phase_counters(self):
        oracle = InstrumentedOracle(lambda x, y, z: x * y * z)
        oracle.set_phase("phase1")
        oracle.eval_points([0.0, 0.1], [0.0] * 2, [0.0] * 2)
        oracle.set_phase("phase2")
        oracle.eval_points([0.0], [0.0], [0.0])
        assert oracle.counts["phase1"] == (2, 2)
        assert oracle.counts["phase2"] == (1, 0)

    def test_vscale_running_max(self):
        oracle = InstrumentedOracle(lambda x, y, z: 10 * x)
        oracle.eval_points([0.1], [0.0], [0.0])
        assert oracle.vscale == pytest.approx(1.0)
        oracle.eval_points([-0.9], [0.0], [0.0])
        assert oracle.vscale == pytest.approx(9.0)
        oracle.eval_points([0.0], [0.0], [0.0])
        assert oracle.vscale == pytest.approx(9.0)


class TestGridAndScalar:
    def test_grid_shape_and_order(self):
        oracle = InstrumentedOracle(lambda x, y, z: 100 * x + 10 * y + z)
        g = oracle.eval_grid([1.0, 2.0], [3.0], [4.0, 5.0, 6.0])
        assert g.shape == (2, 1, 3)
        assert g[1, 0, 2] == 100 * 2 + 10 * 3 + 6

    def test_scalar_call(self):
        oracle = InstrumentedOracle(lambda x, y, z: x - z)
        assert oracle(0.5, 0.0, 0.25) == pytest.approx(0.25)
        assert isinstance(oracle(0.0, 0.0, 0.0), float)

    def test_non_vectorized(self):
        def scalar_only(x, y, z):
            assert np.isscalar(x) or np.ndim(x) == 0
            return float(x) + float(y)

        oracle = InstrumentedOracle(scalar_only, vectorized=False)
        out = oracle.eval_points([0.1, 0.2], [1.0, 1.0], [0.0, 0.0])
        np.testing.assert_allclose(out, [1.1, 1.2])


class TestNanPolicy:
    def test_nan_raises_with_point(self):
        oracle = InstrumentedOracle(lambda x, y, z: np.where(x > 0, np.nan, 1.0))
        with pytest.raises(SamplingError) as exc:
            oracle.eval_points([-0.5, 0.5], [0.0] * 2, [0.0] * 2)
        assert exc.value.point[0] == 0.5

    def test_inf_raises(self):
        oracle = InstrumentedOracle(lambda x, y, z: 1.0 / x)
        with pytest.raises(SamplingError):
            oracle.eval_points([0.0], [0.0], [0.0])
