"""POD training, rank selection, projection and Vandermonde bases."""

import logging

import numpy as np
import pytest
from pydantic import ValidationError

from sparsense.core.errors import (
    DegenerateAfterCentering,
    InfeasibleRankSpec,
    NonMonotoneInput,
    RankOutOfRange,
    TruncatedSpectrum,
    UnsupportedBasis,
)
from sparsense.models import BasisSource, RankKind, RankSpec, SnapshotMatrix, TailoredBasis
from sparsense.numerics.basis import (
    fit_pod,
    hard_threshold,
    hard_threshold_rank,
    omega_unknown_noise,
    project_coefficients,
    synthetic_snapshots,
    vandermonde_basis,
)
from sparsense.numerics.factor import condition_number


class TestRankSpec:

    @pytest.mark.parametrize("text", ["fixed:5", "energy:0.9", "auto"])
    def test_text_form(self, text):
        assert str(RankSpec.parse(text)) == text

    def test_parse_kinds(self):
        assert RankSpec.parse("fixed:3").kind == RankKind.FIXED
        assert RankSpec.parse("energy:0.5").value == 0.5

    @pytest.mark.parametrize("text", ["fixed:0", "energy:1.5", "median"])
    def test_invalid(self, text):
        with pytest.raises((ValueError, ValidationError)):
            RankSpec.parse(text)


class TestFitPod:

    def test_orthogonal_columns(self):
        snapshots = SnapshotMatrix(values=np.array([[2.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
        basis = fit_pod(snapshots, RankSpec.fixed(2), mean_subtract=False)
        np.testing.assert_allclose(basis.modes, np.eye(3)[:, :2], atol=1e-15)
        np.testing.assert_allclose(basis.sigmas, [2.0, 1.0])
        assert basis.mean is None

    def test_identical_snapshots_degenerate_after_centering(self):
        snapshots = SnapshotMatrix(values=np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]))
        with pytest.raises(DegenerateAfterCentering):
            fit_pod(snapshots, RankSpec.fixed(1), mean_subtract=True)

    def test_energy_fraction_rank(self):
        snapshots = synthetic_snapshots(50, 20, [10.0, 5.0, 1.0], seed=1)
        basis = fit_pod(snapshots, RankSpec.energy(0.9), mean_subtract=False)
        assert basis.r == 2
        assert basis.energy_fraction == pytest.approx(15.0 / 16.0, rel=1e-10)

    def test_auto_rank_recovers_planted_rank(self):
        snapshots = synthetic_snapshots(200, 100, np.linspace(10.0, 2.0, 5), seed=4, noise=0.01)
        assert fit_pod(snapshots, RankSpec.auto(), mean_subtract=False).r == 5

    def test_keeps_full_spectrum(self, low_rank_snapshots):
        basis = fit_pod(low_rank_snapshots(n=30, m=12), RankSpec.fixed(2), mean_subtract=False)
        assert basis.spectrum.shape == (12,)
        np.testing.assert_array_equal(basis.sigmas, basis.spectrum[:2])

    def test_modes_are_orthonormal(self, low_rank_snapshots):
        basis = fit_pod(low_rank_snapshots(), RankSpec.fixed(4))
        np.testing.assert_allclose(basis.modes.T @ basis.modes, np.eye(4), atol=1e-12)

    def test_mean_subtraction_stores_mean(self, low_rank_snapshots):
        snapshots = low_rank_snapshots()
        basis = fit_pod(snapshots, RankSpec.fixed(2), mean_subtract=True)
        np.testing.assert_allclose(basis.mean, snapshots.values.mean(axis=1))

    def test_rank_beyond_numerical_rank(self, low_rank_snapshots):
        with pytest.raises(InfeasibleRankSpec):
            fit_pod(low_rank_snapshots(n=30, m=20, rank=3), RankSpec.fixed(25), mean_subtract=False)

    def test_auto_needs_two_snapshots(self):
        snapshots = SnapshotMatrix(values=np.arange(1.0, 5.0).reshape(4, 1))
        with pytest.raises(InfeasibleRankSpec):
            fit_pod(snapshots, RankSpec.auto(), mean_subtract=False)


class TestHardThreshold:

    def test_omega_at_square_aspect(self):
        assert omega_unknown_noise(1.0) == pytest.approx(2.86)

    def test_single_dominant_value(self):
        result = hard_threshold(np.array([10.0, 1.0, 1.0, 1.0, 1.0]), 5, 5)
        assert result.median == 1.0
        assert result.tau == pytest.approx(2.86)
        assert result.rank == 1
        assert not result.floored

    def test_equal_values_floor_to_one(self, caplog):
        with caplog.at_level(logging.WARNING, logger="sparsense"):
            result = hard_threshold(np.ones(4), 4, 8)
        assert result.rank == 1
        assert result.floored
        assert "keeping rank 1" in caplog.text

    def test_rank_shortcut(self):
        assert hard_threshold_rank(np.array([10.0, 1.0, 1.0, 1.0, 1.0]), 5, 5) == 1

    def test_increasing_values(self):
        with pytest.raises(NonMonotoneInput):
            hard_threshold(np.array([1.0, 2.0]), 2, 2)

    def test_truncated_spectrum(self):
        with pytest.raises(TruncatedSpectrum):
            hard_threshold(np.array([3.0, 2.0]), 10, 10)


class TestProjectCoefficients:

    def test_coordinate_extraction(self):
        basis = TailoredBasis(modes=np.eye(3)[:, :2], sigmas=[1.0, 1.0], source=BasisSource.POD)
        np.testing.assert_allclose(project_coefficients(basis, np.array([3.0, 4.0, 5.0])), [3.0, 4.0])

    def test_orthogonal_complement_projects_to_zero(self):
        basis = TailoredBasis(modes=np.eye(3)[:, :2], sigmas=[1.0, 1.0], source=BasisSource.POD)
        np.testing.assert_allclose(project_coefficients(basis, np.array([0.0, 0.0, 7.0])), [0.0, 0.0])

    def test_synthesize_then_project(self, make_basis, rng):
        basis = make_basis(40, 6, seed=2)
        a0 = rng.standard_normal(6)
        np.testing.assert_allclose(project_coefficients(basis, basis.modes @ a0), a0, atol=1e-12)

    def test_needs_pod_basis(self):
        basis = vandermonde_basis(np.linspace(0.0, 1.0, 5), 2)
        with pytest.raises(UnsupportedBasis):
            project_coefficients(basis, np.ones(5))


class TestVandermonde:

    def test_rows(self):
        basis = vandermonde_basis(np.array([0.0, 0.5, 1.0]), 3)
        np.testing.assert_allclose(basis.modes, [[1.0, 0.0, 0.0], [1.0, 0.5, 0.25], [1.0, 1.0, 1.0]])
        assert basis.source == BasisSource.VANDERMONDE

    def test_constant_polynomial(self):
        np.testing.assert_array_equal(vandermonde_basis(np.linspace(0.0, 1.0, 4), 1).modes, np.ones((4, 1)))

    def test_equispaced_high_degree_is_ill_conditioned(self):
        basis = vandermonde_basis(np.linspace(0.0, 1.0, 1000), 31)
        assert condition_number(basis.modes) > 1e8

    def test_grid_must_increase(self):
        with pytest.raises(NonMonotoneInput):
            vandermonde_basis(np.array([0.0, 0.5, 0.5]), 2)

    def test_rank_out_of_range(self):
        with pytest.raises(RankOutOfRange):
            vandermonde_basis(np.array([0.0, 1.0]), 3)


class TestSyntheticSnapshots:

    def test_planted_spectrum(self):
        snapshots = synthetic_snapshots(30, 20, [5.0, 2.0, 1.0], seed=7)
        s = np.linalg.svd(snapshots.values, compute_uv=False)
        np.testing.assert_allclose(s[:3], [5.0, 2.0, 1.0], rtol=1e-12)
        assert s[3] < 1e-12

    def test_seeded(self):
        a = synthetic_snapshots(10, 5, [1.0], seed=3).values
        b = synthetic_snapshots(10, 5, [1.0], seed=3).values
        np.testing.assert_array_equal(a, b)
