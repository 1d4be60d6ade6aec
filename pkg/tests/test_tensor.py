"""Tests for dense tensor utilities and the truncated HOSVD."""

import numpy as np
import pytest

from tuckercheb.oracle import InstrumentedOracle
from tuckercheb.tensor import (
    dematricize,
    hosvd_truncated,
    matricize,
    mode_mult,
    norm_frob,
    norm_inf,
    subtensor,
    tucker_reconstruct,
)


def random_tensor(shape, seed):
    return np.random.default_rng(seed).standard_normal(shape)


class TestMatricize:
    def test_round_trip_all_modes(self):
        t = random_tensor((4, 5, 6), 0)
        for mode in (1, 2, 3):
            m = matricize(t, mode)
            assert m.shape[0] == t.shape[mode - 1]
            np.testing.assert_array_equal(dematricize(m, t.shape, mode), t)

    def test_mode1_column_order(self):
        # mode-1 columns run over (j, k) with j fastest
        t = random_tensor((3, 4, 5), 1)
        m = matricize(t, 1)
        assert m[:, 1].tolist() == t[:, 1, 0].tolist()
        assert m[:, 4].tolist() == t[:, 0, 1].tolist()

    def test_mode_mult_consistency(self):
        rng = np.random.default_rng(2)
        t = rng.standard_normal((6, 5, 4))
        for mode in (1, 2, 3):
            m = rng.standard_normal((3, t.shape[mode - 1]))
            lhs = matricize(mode_mult(t, m, mode), mode)
            rhs = m @ matricize(t, mode)
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_norms(self):
        t = np.array([[[1.0, -2.0], [3.0, 0.5]]])
        assert norm_inf(t) == 3.0
        assert norm_frob(t) == pytest.approx(np.sqrt(1 + 4 + 9 + 0.25))


class TestSubtensor:
    def test_matches_direct_evaluation(self):
        f = lambda x, y, z: np.cos(x) + y * z
        oracle = InstrumentedOracle(f)
        t = subtensor(oracle, (9, 9, 9), [0, 4], range(9), [3])
        from tuckercheb.chebyshev import cheb_points

        pts = cheb_points(9)
        expect = f(
            pts[[0, 4]][:, None, None], pts[None, :, None], pts[[3]][None, None, :]
        )
        np.testing.assert_array_equal(t, expect)
        assert t.shape == (2, 9, 1)

    def test_memoization_across_calls(self):
        oracle = InstrumentedOracle(lambda x, y, z: x + y + z)
        subtensor(oracle, (5, 5, 5), range(5), [0], [0])
        first = oracle.distinct_points
        subtensor(oracle, (5, 5, 5), range(5), [0], [0])
        assert oracle.distinct_points == first
        assert oracle.total_calls == 2 * first


class TestHosvd:
    def test_rank_one(self):
        u, v, w = (np.random.default_rng(s).standard_normal(6) for s in (3, 4, 5))
        t = np.einsum("i,j,k->ijk", u, v, w)
        _, _, ranks = hosvd_truncated(t, 1e-10)
        assert ranks == (1, 1, 1)

    def test_sum_function_rank_two(self):
        from tuckercheb.chebyshev import cheb_points

        p = cheb_points(5)
        t = p[:, None, None] + p[None, :, None] + p[None, None, :]
        _, _, ranks = hosvd_truncated(t, 1e-10)
        assert ranks == (2, 2, 2)

    def test_exact_reconstruction_tol_zero(self):
        t = random_tensor((4, 4, 4), 6)
        core, factors, ranks = hosvd_truncated(t, 0.0)
        assert all(r <= 4 for r in ranks)
        np.testing.assert_allclose(tucker_reconstruct(core, factors), t, atol=1e-12)

    def test_reconstruction_bound(self):
        rng = np.random.default_rng(7)
        low = np.einsum(
            "ia,ja,ka->ijk",
            rng.standard_normal((8, 2)),
            rng.standard_normal((8, 2)),
            rng.standard_normal((8, 2)),
        )
        t = low + 1e-9 * rng.standard_normal((8, 8, 8))
        tol = 1e-6
        core, factors, _ = hosvd_truncated(t, tol)
        assert norm_frob(t - tucker_reconstruct(core, factors)) <= tol * norm_frob(t)

    def test_rank_rotation_invariance(self):
        rng = np.random.default_rng(8)
        t = np.einsum(
            "ia,ja,ka->ijk",
            rng.standard_normal((7, 3)),
            rng.standard_normal((7, 3)),
            rng.standard_normal((7, 3)),
        )
        _, _, ranks = hosvd_truncated(t, 1e-10)
        rotated = t
        for mode in (1, 2, 3):
            q, _ = np.linalg.qr(rng.standard_normal((7, 7)))
            rotated = mode_mult(rotated, q, mode)
        _, _, ranks_rot = hosvd_truncated(rotated, 1e-10)
        assert ranks == ranks_rot
