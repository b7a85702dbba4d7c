"""Statistical and structural properties checked over many seeded trials.

Each class runs a small Monte-Carlo experiment and asserts the law or
ordering it should exhibit.
"""

import numpy as np
import pytest

from sparsense.models import (
    BasisSource,
    CriterionKind,
    NoiseMethod,
    PlacementCriterion,
    RankSpec,
    SamplingMode,
    SplitRule,
    SweepMethod,
    TailoredBasis,
)
from sparsense.numerics.basis import fit_pod, hard_threshold_rank, random_orthonormal, synthetic_snapshots
from sparsense.numerics.csrecover import basic_solution, three_tone_demo
from sparsense.numerics.factor import condition_number, qr_pivot, truncated_svd
from sparsense.numerics.interpolation import fekete_comparison
from sparsense.numerics.placement import (
    compare_to_optimum,
    evaluate_criterion,
    select_deim_sensors,
    select_qr_sensors,
)
from sparsense.numerics.reconstruct import covariance_trace_check
from sparsense.numerics.sweeps import split_snapshots, sweep_noise, sweep_rank

D_OPT = PlacementCriterion(kind=CriterionKind.D_OPTIMAL)


class TestQrFactorLaws:

    def test_rdiag_and_dominance(self):
        for seed in range(100):
            b = np.random.default_rng(seed).standard_normal((200, 50))
            factor = qr_pivot(b, 50)
            rdiag = factor.rdiag
            assert np.all(np.diff(rdiag) <= 1e-10 * rdiag[0])
            upper = np.abs(factor.r_upper)
            for i in range(50):
                column_norms = np.sqrt(np.cumsum(upper[i:, i:] ** 2, axis=0))
                # ‖R[i:j+1, j]‖ for every j ≥ i
                tails = np.diagonal(column_norms)
                assert np.all(rdiag[i] >= tails * (1.0 - 1e-12))

    def test_square_determinant(self):
        for seed in range(100):
            b = np.random.default_rng(1000 + seed).standard_normal((50, 50))
            factor = qr_pivot(b, 50)
            _, logdet = np.linalg.slogdet(b)
            assert abs(np.sum(np.log(factor.rdiag)) - logdet) <= 1e-10 * max(1.0, abs(logdet))


class TestVolumeAtSelection:

    def test_determinant_is_rdiag_product(self, make_basis):
        for seed in range(100):
            basis = make_basis(200, 10, seed=seed)
            record = select_qr_sensors(basis, 10)
            factor = qr_pivot(basis.modes.T, 10)
            np.testing.assert_array_equal(factor.pivots, record.positions)
            volume = abs(np.linalg.det(basis.rows(record.positions)))
            assert volume == pytest.approx(np.prod(factor.rdiag), rel=1e-10)


class TestQrAgainstRandomSelections:

    def test_beats_median_random_selection(self, make_basis):
        for seed in range(100):
            basis = make_basis(12, 3, seed=seed)
            record = select_qr_sensors(basis, 3)
            qr_value = evaluate_criterion(basis, record, D_OPT)

            gen = np.random.default_rng(seed)
            subsets = np.argsort(gen.random((1000, 12)), axis=1)[:, :3]
            _, logabs = np.linalg.slogdet(basis.modes[subsets])
            assert qr_value >= np.median(2.0 * logabs)

            ratio = compare_to_optimum(basis, record, D_OPT).ratio
            assert 0.0 < ratio <= 1.0 + 1e-12


class TestPermutationEquivariance:

    def test_relabelled_locations_give_relabelled_sensors(self, make_basis):
        for seed in range(50):
            basis = make_basis(40, 5, seed=seed)
            perm = np.random.default_rng(500 + seed).permutation(40)
            shuffled = TailoredBasis(modes=basis.modes[perm], sigmas=basis.sigmas, source=BasisSource.POD)
            original = select_qr_sensors(basis, 5).positions
            relabelled = select_qr_sensors(shuffled, 5).positions
            np.testing.assert_array_equal(perm[relabelled], original)


class TestConditioningLaws:

    def test_worst_case_signal_to_perturbation(self):
        for seed in range(20):
            theta = np.random.default_rng(seed).standard_normal((8, 4))
            _, _, vt = np.linalg.svd(theta)
            signal, perturbation = vt[-1], 1e-3 * vt[0]
            ratio_in = np.linalg.norm(signal) / np.linalg.norm(perturbation)
            ratio_out = np.linalg.norm(theta @ signal) / np.linalg.norm(theta @ perturbation)
            assert ratio_out == pytest.approx(ratio_in / condition_number(theta), rel=1e-10)

    def test_oversampled_gram_determinant(self, make_basis):
        for seed in range(100):
            basis = make_basis(60, 5, seed=seed)
            theta = basis.rows(select_qr_sensors(basis, 10).positions)
            outer = np.linalg.svd(theta @ theta.T, compute_uv=False)[:5]
            assert np.linalg.det(theta.T @ theta) == pytest.approx(np.prod(outer), rel=1e-9)

    def test_square_selections_are_invertible(self, make_basis):
        for seed in range(100):
            basis = make_basis(50, 6, seed=seed)
            for record in (select_qr_sensors(basis, 6), select_deim_sensors(basis)):
                assert len(set(record.indices)) == 6
                assert np.isfinite(condition_number(basis.rows(record.positions)))


class TestExactRecovery:

    def test_rank_ten_in_span(self):
        snapshots = synthetic_snapshots(1000, 200, np.linspace(10.0, 1.0, 10), seed=0)
        train, test = split_snapshots(snapshots, SplitRule())
        row = sweep_rank(train, test, SweepMethod.QR, [10], mean_subtract=False)[0]
        assert row.p == 10
        assert row.mean_rel_error <= 1e-8


class TestPodOptimality:

    def test_no_random_projector_does_better(self):
        snapshots = synthetic_snapshots(30, 20, 1.0 / np.arange(1, 16), seed=3)
        x = snapshots.values
        modes = fit_pod(snapshots, RankSpec.fixed(4), mean_subtract=False).modes
        pod_residual = np.linalg.norm(x - modes @ (modes.T @ x))
        gen = np.random.default_rng(31)
        for _ in range(100):
            q = random_orthonormal(30, 4, gen)
            assert pod_residual <= np.linalg.norm(x - q @ (q.T @ x)) + 1e-9

    def test_projection_is_lower_envelope_of_noise_sweep(self):
        etas = [0.0, 1e-3, 1e-2]
        hits = 0
        for seed in range(100):
            snapshots = synthetic_snapshots(100, 60, 1.0 / np.arange(1, 41), seed=seed)
            train, test = split_snapshots(snapshots, SplitRule())
            result = sweep_noise(train, test, list(NoiseMethod), etas, r=8, seed=seed)
            below = True
            for eta in etas:
                errors = {row.method: row.mean_rel_error for row in result.rows if row.eta == eta}
                below &= all(errors[NoiseMethod.POD_PROJECTION] <= value for value in errors.values())
            hits += below
        assert hits >= 95


class TestNoiseVarianceLaw:

    def test_covariance_trace(self):
        theta = np.random.default_rng(77).standard_normal((20, 5))
        report = covariance_trace_check(theta, 0.1, 10_000, seed=78)
        assert 0.9 <= report.ratio <= 1.1


class TestOversamplingBenefit:

    def test_twice_the_sensors(self):
        wins = 0
        for seed in range(100):
            snapshots = synthetic_snapshots(200, 150, 1.0 / np.arange(1, 101), seed=seed)
            train, test = split_snapshots(snapshots, SplitRule())
            result = sweep_noise(
                train, test, [NoiseMethod.QR, NoiseMethod.QR_OVERSAMPLED], [1e-3], r=20, seed=seed, mean_subtract=False
            )
            square, oversampled = result.rows
            wins += oversampled.kappa < square.kappa and oversampled.mean_rel_error < square.mean_rel_error
        assert wins >= 95


class TestThreeToneRecovery:

    def test_random_sampling(self):
        hits = sum(three_tone_demo(n=4096, p=256, seed=seed, k_max=6).match for seed in range(100))
        assert hits >= 95

    def test_equispaced_sampling_aliases(self):
        # regular positions do not depend on the seed
        report = three_tone_demo(n=4096, p=256, seed=0, k_max=6, sampling=SamplingMode.EQUISPACED)
        assert not report.match


class TestFeketeNodes:

    def test_kinked_parabola(self):
        report = fekete_comparison(30, 1000)
        assert report.equispaced_sup_error > 1.0
        assert report.qr_sup_error <= report.equispaced_sup_error / 10.0


class TestRankAutoSelection:

    def test_planted_rank(self):
        hits = 0
        for seed in range(100):
            snapshots = synthetic_snapshots(200, 200, np.linspace(20.0, 10.0, 10), seed=seed, noise=0.1)
            sigmas = truncated_svd(snapshots.values, 200).sigmas
            hits += hard_threshold_rank(sigmas, 200, 200) == 10
        assert hits >= 95

    def test_through_training(self):
        snapshots = synthetic_snapshots(200, 200, np.linspace(20.0, 10.0, 10), seed=5, noise=0.1)
        assert fit_pod(snapshots, RankSpec.auto(), mean_subtract=False).r == 10


class TestPivotHierarchy:

    def test_nested_sensor_sets(self, make_basis):
        basis = make_basis(500, 15, seed=21)
        previous = select_qr_sensors(basis, 15).indices
        for p in range(16, 41):
            current = select_qr_sensors(basis, p).indices
            assert current[:-1] == previous
            previous = current


class TestBasicSolutionSupport:

    def test_support_fixed_by_theta(self):
        gen = np.random.default_rng(64)
        theta = gen.standard_normal((64, 512))
        supports = {tuple(basic_solution(theta, gen.standard_normal(64)).support) for _ in range(20)}
        assert len(supports) == 1
