"""Pivoted QR, truncated SVD, least squares and condition numbers."""

import math

import numpy as np
import pytest

from sparsense.core.errors import DimensionMismatch, NonFiniteInput, RankOutOfRange, ZeroMatrix
from sparsense.numerics.factor import condition_number, least_squares_pinv, qr_pivot, thin_svd, truncated_svd


class TestQrPivot:

    def test_identity_ties_go_to_lowest_index(self):
        factor = qr_pivot(np.eye(3), 3)
        assert factor.pivots.tolist() == [0, 1, 2]
        np.testing.assert_allclose(factor.rdiag, [1.0, 1.0, 1.0])

    def test_larger_column_first(self):
        b = np.array([[0.0, 2.0], [1.0, 0.0]])
        factor = qr_pivot(b, 2)
        assert factor.pivots.tolist() == [1, 0]
        np.testing.assert_allclose(factor.rdiag, [2.0, 1.0])

    def test_dependent_column_has_zero_residual(self):
        b = np.array([[1.0, 2.0], [0.0, 0.0]])
        factor = qr_pivot(b, 2)
        assert factor.pivots.tolist() == [1, 0]
        np.testing.assert_allclose(factor.rdiag, [2.0, 0.0], atol=1e-15)

    def test_factorization_reproduces_pivoted_columns(self, rng):
        b = rng.standard_normal((8, 12))
        factor = qr_pivot(b, 8)
        np.testing.assert_allclose(factor.q.T @ factor.q, np.eye(8), atol=1e-13)
        np.testing.assert_allclose(factor.q @ factor.r_upper, b[:, factor.order], atol=1e-12)

    def test_partial_factorization_keeps_leading_pivots(self, rng):
        b = rng.standard_normal((10, 20))
        full = qr_pivot(b, 10)
        partial = qr_pivot(b, 4)
        assert partial.pivots.tolist() == full.pivots[:4].tolist()
        assert partial.order.size == 20

    def test_p_out_of_range(self):
        with pytest.raises(RankOutOfRange):
            qr_pivot(np.eye(3), 4)
        with pytest.raises(RankOutOfRange):
            qr_pivot(np.eye(3), 0)

    def test_non_finite_input(self):
        with pytest.raises(NonFiniteInput):
            qr_pivot(np.array([[1.0, np.nan]]), 1)

    def test_volume_is_product_of_leading_diagonal(self, rng):
        b = rng.standard_normal((5, 9))
        factor = qr_pivot(b, 5)
        assert factor.volume(3) == pytest.approx(float(np.prod(factor.rdiag[:3])))


class TestTruncatedSvd:

    def test_diagonal(self):
        factor = truncated_svd(np.diag([3.0, 1.0]), 2)
        np.testing.assert_allclose(factor.sigmas, [3.0, 1.0])
        np.testing.assert_allclose(np.abs(factor.modes), np.eye(2), atol=1e-15)

    def test_rank_one(self):
        factor = truncated_svd(np.full((2, 2), 2.0), 1)
        assert factor.sigmas[0] == pytest.approx(4.0)
        np.testing.assert_allclose(factor.modes[:, 0], np.ones(2) / math.sqrt(2.0))

    def test_isometry_has_unit_singular_values(self, rng):
        q, _ = np.linalg.qr(rng.standard_normal((9, 4)))
        np.testing.assert_allclose(truncated_svd(q, 4).sigmas, 1.0)

    def test_sign_convention_makes_largest_entry_positive(self, rng):
        u, _, _ = thin_svd(rng.standard_normal((7, 5)))
        lead = np.argmax(np.abs(u), axis=0)
        assert np.all(u[lead, np.arange(5)] > 0)

    def test_approximation_is_eckart_young_optimal(self, rng):
        x = rng.standard_normal((12, 8))
        factor = truncated_svd(x, 3)
        s = np.linalg.svd(x, compute_uv=False)
        assert np.linalg.norm(x - factor.approximation(), 2) == pytest.approx(s[3])

    def test_rank_out_of_range(self):
        with pytest.raises(RankOutOfRange):
            truncated_svd(np.eye(3), 4)


class TestLeastSquares:

    def test_diagonal_solve(self):
        np.testing.assert_allclose(least_squares_pinv(np.diag([1.0, 2.0]), np.array([1.0, 2.0])), [1.0, 1.0])

    def test_mean_of_observations(self):
        np.testing.assert_allclose(least_squares_pinv(np.ones((2, 1)), np.array([1.0, 3.0])), [2.0])

    def test_zero_measurements(self):
        np.testing.assert_array_equal(least_squares_pinv(np.eye(3), np.zeros(3)), np.zeros(3))

    def test_several_right_hand_sides(self, rng):
        theta = rng.standard_normal((6, 3))
        a = rng.standard_normal((3, 4))
        np.testing.assert_allclose(least_squares_pinv(theta, theta @ a), a, atol=1e-12)

    def test_recovers_coefficients_of_well_conditioned_theta(self):
        for seed in range(100):
            gen = np.random.default_rng(seed)
            theta = gen.standard_normal((20, 5))
            a = gen.standard_normal(5)
            assert condition_number(theta) < 1e6
            recovered = least_squares_pinv(theta, theta @ a)
            assert np.linalg.norm(recovered - a) <= 1e-9 * np.linalg.norm(a)

    def test_underdetermined_is_rejected(self):
        with pytest.raises(DimensionMismatch):
            least_squares_pinv(np.ones((1, 2)), np.ones(1))

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            least_squares_pinv(np.eye(2), np.ones(3))


class TestConditionNumber:

    def test_orthogonal_is_one(self, rng):
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        assert condition_number(q) == pytest.approx(1.0)

    def test_diagonal(self):
        assert condition_number(np.diag([3.0, 1.0])) == pytest.approx(3.0)

    def test_shear(self):
        expected = math.sqrt((3 + math.sqrt(5)) / (3 - math.sqrt(5)))
        assert condition_number(np.array([[1.0, 1.0], [0.0, 1.0]])) == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(2.618034, rel=1e-6)

    def test_singular_is_infinite(self):
        assert math.isinf(condition_number(np.array([[1.0, 0.0], [0.0, 0.0]])))

    def test_wide_is_infinite(self):
        assert math.isinf(condition_number(np.ones((1, 3)) + np.arange(3)))

    def test_zero_matrix(self):
        with pytest.raises(ZeroMatrix):
            condition_number(np.zeros((2, 2)))
