"""Benchmark sweeps over basis rank and measurement noise."""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from sparsense.core.config import Settings, settings as default_settings
from sparsense.core.errors import DimensionMismatch, InfeasibleSensorCount, InputError
from sparsense.models.basis import RankSpec, TailoredBasis
from sparsense.models.reconstruction import (
    NoiseMethod,
    NoiseModel,
    NoiseSweepResult,
    NoiseSweepRow,
    PRule,
    SplitKind,
    SplitRule,
    SweepMethod,
    SweepRow,
)
from sparsense.models.sensors import SensorSetRecord
from sparsense.models.snapshot import SnapshotMatrix
from .basis import fit_pod
from .factor import condition_number
from .placement import select_deim_sensors, select_qr_sensors, select_random_sensors
from .reconstruct import add_measurement_noise, estimate_states, relative_errors

logger = logging.getLogger(__name__)


def split_snapshots(matrix: SnapshotMatrix, rule: SplitRule) -> Tuple[SnapshotMatrix, SnapshotMatrix]:
    """Split snapshot columns into (train, test) per ``rule``."""
    m = matrix.cols
    columns = np.arange(m)
    if rule.kind == SplitKind.INTERLEAVE:
        test_mask = (columns + 1) % rule.k == 0
    else:
        n_test = max(1, int(math.ceil(rule.test_fraction * m)))
        test_mask = np.zeros(m, dtype=bool)
        if rule.kind == SplitKind.CHRONO:
            test_mask[m - n_test:] = True
        else:
            picked = np.random.default_rng(rule.seed).permutation(m)[:n_test]
            test_mask[picked] = True

    if test_mask.all() or not test_mask.any():
        raise InputError(f"split {rule} leaves an empty train or test set for {m} snapshots")
    train = matrix.select_columns(np.flatnonzero(~test_mask))
    test = matrix.select_columns(np.flatnonzero(test_mask))
    logger.info(f"split {rule}: {train.cols} train / {test.cols} test snapshots")
    return train, test


def _mean_std(errors: np.ndarray) -> Tuple[float, float]:
    """Mean and population standard deviation with exactly rounded sums."""
    values = [float(e) for e in errors]
    mean = math.fsum(values) / len(values)
    var = math.fsum((v - mean) ** 2 for v in values) / len(values)
    return mean, math.sqrt(var)


def _projection_states(basis: TailoredBasis, x: np.ndarray) -> np.ndarray:
    """Full-state projection Ψ_rΨ_rᵀ(x − mean) + mean."""
    if basis.mean is None:
        return basis.modes @ (basis.modes.T @ x)
    centered = x - basis.mean[:, None]
    return basis.modes @ (basis.modes.T @ centered) + basis.mean[:, None]


def sensor_errors(basis: TailoredBasis, sensors: SensorSetRecord, test: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Relative error of every test column reconstructed from measurements ``y``."""
    _, states = estimate_states(basis, sensors.positions, y)
    return relative_errors(test, states)


def _check_shapes(train: SnapshotMatrix, test: SnapshotMatrix) -> None:
    if train.rows != test.rows:
        raise DimensionMismatch(f"train has n={train.rows}, test has n={test.rows}")


def _place(method: SweepMethod, basis: TailoredBasis, p: int, seed: int, cfg: Settings) -> SensorSetRecord:
    if method == SweepMethod.QR:
        return select_qr_sensors(basis, p, max_n=cfg.OVERSAMPLE_MAX_N)
    if method == SweepMethod.DEIM:
        if p != basis.r:
            raise InfeasibleSensorCount(f"DEIM places exactly r={basis.r} sensors, asked for p={p}")
        return select_deim_sensors(basis)
    return select_random_sensors(basis.n, p, seed, generator=cfg.RANDOM_GENERATOR)


def sweep_rank(
    train: SnapshotMatrix,
    test: SnapshotMatrix,
    method: SweepMethod,
    r_values: Sequence[int],
    p_rule: PRule = PRule.P_EQUALS_R,
    seed: int = 0,
    mean_subtract: bool = True,
    settings: Optional[Settings] = None,
) -> List[SweepRow]:
    """Reconstruction error of ``method`` for a POD basis of every rank in ``r_values``.

    ``pod_projection`` uses the full state, so its rows report p = n.
    ``settings`` supplies the oversampling guard and the generator name.
    """
    _check_shapes(train, test)
    cfg = default_settings if settings is None else settings
    rows: List[SweepRow] = []
    for r in r_values:
        basis = fit_pod(train, RankSpec.fixed(r), mean_subtract)
        if method == SweepMethod.POD_PROJECTION:
            p = train.rows
            errors = relative_errors(test.values, _projection_states(basis, test.values))
        else:
            p = p_rule.sensors_for(r)
            sensors = _place(method, basis, p, seed, cfg)
            y = test.values[sensors.positions, :]
            errors = sensor_errors(basis, sensors, test.values, y)
        mean, std = _mean_std(errors)
        logger.info(f"sweep_rank {method.value}: r={r}, p={p}, mean={mean:.4e}")
        rows.append(SweepRow(r=r, p=p, mean_rel_error=mean, std_rel_error=std))
    return rows


def _noise_sensors(method: NoiseMethod, basis: TailoredBasis, cfg: Settings) -> SensorSetRecord:
    if method == NoiseMethod.QR:
        return select_qr_sensors(basis, basis.r, max_n=cfg.OVERSAMPLE_MAX_N)
    if method == NoiseMethod.QR_OVERSAMPLED:
        return select_qr_sensors(basis, 2 * basis.r, max_n=cfg.OVERSAMPLE_MAX_N)
    return select_deim_sensors(basis)


def monotone_flags(rows: Sequence[NoiseSweepRow], tolerance: float) -> Dict[str, bool]:
    """Per method: error non-decreasing in eta up to a relative ``tolerance``."""
    flags: Dict[str, bool] = {}
    for method in dict.fromkeys(row.method for row in rows):
        series = sorted((row.eta, row.mean_rel_error) for row in rows if row.method == method)
        ok = all(curr >= prev * (1.0 - tolerance) for (_, prev), (_, curr) in zip(series, series[1:]))
        if not ok:
            logger.warning(f"noise sweep: error of {method.value} is not monotone in eta")
        flags[method.value] = ok
    return flags


def sweep_noise(
    train: SnapshotMatrix,
    test: SnapshotMatrix,
    methods: Sequence[NoiseMethod],
    eta_values: Sequence[float],
    r: int,
    seed: int = 0,
    mean_subtract: bool = True,
    tolerance: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> NoiseSweepResult:
    """Reconstruction error under sensor noise for each method and noise level.

    Noise enters the test measurements only. The ``pod_projection`` baseline
    perturbs the full test state with the same noise model.
    """
    _check_shapes(train, test)
    if any(eta < 0 for eta in eta_values):
        raise InputError("noise levels must be nonnegative")
    cfg = default_settings if settings is None else settings
    tolerance = cfg.MONOTONE_TOLERANCE if tolerance is None else tolerance
    basis = fit_pod(train, RankSpec.fixed(r), mean_subtract)

    rows: List[NoiseSweepRow] = []
    for method in methods:
        if method == NoiseMethod.POD_PROJECTION:
            sensors, kappa = None, 1.0
            clean = test.values
        else:
            sensors = _noise_sensors(method, basis, cfg)
            kappa = condition_number(basis.rows(sensors.positions))
            clean = test.values[sensors.positions, :]
        for eta in eta_values:
            noisy = add_measurement_noise(clean, NoiseModel(eta=eta, seed=seed))
            if sensors is None:
                errors = relative_errors(test.values, _projection_states(basis, noisy))
            else:
                errors = sensor_errors(basis, sensors, test.values, noisy)
            mean, _ = _mean_std(errors)
            rows.append(NoiseSweepRow(method=method, eta=eta, mean_rel_error=mean, kappa=kappa))

    return NoiseSweepResult(rows=rows, monotone=monotone_flags(rows, tolerance), r=r)
