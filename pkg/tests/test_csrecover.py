"""DCT transforms, matching pursuit, basic solutions, incoherence and the three-tone demo."""

import logging
import math

import numpy as np
import pytest

from sparsense.core.errors import DimensionMismatch, InputError, ZeroColumn
from sparsense.models import (
    BasisSource,
    SamplingMode,
    SensorMethod,
    SensorSetRecord,
    TailoredBasis,
    UniversalBasisSpec,
    UniversalKind,
)
from sparsense.numerics.csrecover import (
    basic_solution,
    dct_analyze,
    dct_synthesis_rows,
    dct_synthesize,
    incoherence,
    omp_recover,
    recovery_rate,
    sample_positions,
    three_tone_demo,
)


def all_sensors(n: int) -> SensorSetRecord:
    return SensorSetRecord(indices=list(range(1, n + 1)), n=n, method=SensorMethod.RANDOM, r=0)


class TestDct:

    def test_round_trip(self, rng):
        x = rng.standard_normal(257)
        np.testing.assert_allclose(dct_synthesize(dct_analyze(x)), x, atol=1e-12)

    def test_constant_is_dc_only(self):
        s = dct_analyze(np.full(32, 2.0))
        assert np.flatnonzero(np.abs(s) > 1e-12).tolist() == [0]
        assert s[0] == pytest.approx(2.0 * math.sqrt(32))

    def test_basis_vector(self):
        n, k0 = 64, 9
        t = np.arange(n)
        s = dct_analyze(np.cos(np.pi * (2 * t + 1) * k0 / (2 * n)))
        assert np.flatnonzero(np.abs(s) > 1e-10).tolist() == [k0]

    def test_synthesis_rows(self):
        n = 16
        psi = np.column_stack([dct_synthesize(e) for e in np.eye(n)])
        np.testing.assert_allclose(dct_synthesis_rows(n, [3, 0, 11]), psi[[3, 0, 11]], atol=1e-14)


class TestOmp:

    def test_one_sparse(self, rng):
        theta = rng.standard_normal((20, 40))
        solution = omp_recover(theta, 3.0 * theta[:, 7], k_max=5)
        assert solution.support == [7]
        assert solution.values[0] == pytest.approx(3.0)
        assert solution.residual_norm <= 1e-12

    def test_zero_measurements(self, rng):
        solution = omp_recover(rng.standard_normal((10, 30)), np.zeros(10), k_max=3)
        assert solution.support == []
        assert solution.residual_norm == 0.0

    def test_two_sparse_dct(self):
        n, p = 512, 64
        hits = 0
        for seed in range(100):
            gen = np.random.default_rng(seed)
            truth = sorted(gen.choice(n, size=2, replace=False).tolist())
            s0 = np.zeros(n)
            s0[truth] = 1.0
            rows = np.sort(gen.choice(n, size=p, replace=False))
            theta = dct_synthesis_rows(n, rows)
            solution = omp_recover(theta, theta @ s0, k_max=2)
            hits += sorted(solution.support) == truth
        assert hits >= 95

    def test_residual_history_decreases(self, rng):
        theta = rng.standard_normal((30, 60))
        solution = omp_recover(theta, rng.standard_normal(30), k_max=6)
        assert solution.k == 6
        assert all(b <= a + 1e-12 for a, b in zip(solution.residual_history, solution.residual_history[1:]))

    def test_sparsity_cap(self, rng):
        with pytest.raises(InputError):
            omp_recover(rng.standard_normal((4, 8)), np.ones(4), k_max=5)

    def test_negative_tolerance(self, rng):
        with pytest.raises(InputError):
            omp_recover(rng.standard_normal((4, 8)), np.ones(4), k_max=2, tol=-1.0)

    def test_zero_columns(self):
        with pytest.raises(ZeroColumn):
            omp_recover(np.zeros((3, 4)), np.ones(3), k_max=2)


class TestBasicSolution:

    def test_larger_column_wins(self):
        solution = basic_solution(np.array([[1.0, 2.0]]), np.array([4.0]))
        assert solution.support == [1]
        np.testing.assert_allclose(solution.dense(2), [0.0, 2.0])

    def test_identity_block(self):
        theta = np.hstack([np.eye(3), np.zeros((3, 2))])
        y = np.array([1.0, 2.0, 3.0])
        solution = basic_solution(theta, y)
        assert solution.support == [0, 1, 2]
        np.testing.assert_allclose(solution.values, y)

    def test_support_depends_on_theta_only(self, rng):
        theta = rng.standard_normal((8, 20))
        first = basic_solution(theta, rng.standard_normal(8))
        second = basic_solution(theta, rng.standard_normal(8))
        assert first.support == second.support
        assert first.residual_norm <= 1e-10

    def test_rank_deficient_pivot_block(self, caplog):
        theta = np.array([[1.0, 1.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0]])
        with caplog.at_level(logging.WARNING, logger="sparsense"):
            solution = basic_solution(theta, np.array([1.0, 1.0]))
        assert solution.reduced
        assert solution.support == [0]
        assert "support reduced" in caplog.text

    def test_needs_wide_system(self):
        with pytest.raises(DimensionMismatch):
            basic_solution(np.eye(3), np.ones(3))


class TestIncoherence:

    def test_identity_basis_is_maximally_coherent(self):
        basis = TailoredBasis(modes=np.eye(16), sigmas=np.ones(16), source=BasisSource.POD)
        assert incoherence(all_sensors(16), basis) == pytest.approx(4.0)

    def test_fourier_is_optimally_incoherent(self):
        spec = UniversalBasisSpec(kind=UniversalKind.FOURIER, n=64)
        assert incoherence(all_sensors(64), spec) == pytest.approx(1.0, abs=1e-12)

    def test_dct_bound(self):
        mu = incoherence(all_sensors(64), UniversalBasisSpec(kind=UniversalKind.DCT, n=64))
        assert 1.0 < mu <= math.sqrt(2.0) + 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            incoherence(all_sensors(8), UniversalBasisSpec(n=16))


class TestThreeTone:

    def test_random_sampling_recovers_tones(self):
        report = three_tone_demo(n=4096, p=1024, seed=0)
        assert report.match
        assert report.recovered_bins == [37.0, 420.0, 711.0]
        assert len(report.sample_indices) == 1024
        assert min(report.sample_indices) >= 1

    def test_equispaced_sampling_aliases(self):
        report = three_tone_demo(n=4096, p=256, seed=0, sampling=SamplingMode.EQUISPACED)
        assert not report.match
        assert report.sampling == SamplingMode.EQUISPACED

    def test_sample_density(self):
        report = three_tone_demo(n=4096, p=256, seed=3)
        assert report.measurements_per_sparsity == pytest.approx(256 / (3 * math.log(4096 / 3)))

    def test_equispaced_positions(self):
        np.testing.assert_array_equal(sample_positions(16, 4, SamplingMode.EQUISPACED, 0), [0, 4, 8, 12])

    def test_random_positions_are_sorted_and_distinct(self):
        positions = sample_positions(100, 30, SamplingMode.RANDOM, 5)
        assert np.all(np.diff(positions) > 0)

    def test_grid_too_coarse(self):
        with pytest.raises(InputError):
            three_tone_demo(n=1000, p=256)

    def test_too_few_samples(self):
        with pytest.raises(InputError):
            three_tone_demo(n=4096, p=32)

    def test_recovery_rate(self):
        assert recovery_rate(4096, 512, seeds=range(3)) == 1.0
