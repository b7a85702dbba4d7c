"""Sensor placement: QR pivoting, DEIM, random sampling, exhaustive search and objectives."""

import itertools
import logging
import math
from typing import Iterator, Optional

import numpy as np
import scipy.linalg as la

from sparsense.core.config import settings
from sparsense.core.errors import (
    CombinatorialLimitExceeded,
    DegenerateBasis,
    DegenerateInterpolant,
    DimensionMismatch,
    InfeasibleSensorCount,
    InputError,
    OversampleLimitExceeded,
    UnsupportedBasis,
    ZeroMatrix,
)
from sparsense.models.basis import BasisSource, TailoredBasis
from sparsense.models.reconstruction import CompareToOptimum
from sparsense.models.sensors import CriterionKind, PlacementCriterion, SensorMethod, SensorSetRecord
from .factor import EPS, KAPPA_FLOOR, condition_number, qr_pivot

logger = logging.getLogger(__name__)


def _record(
    positions: np.ndarray,
    basis_n: int,
    method: SensorMethod,
    r: int,
    **extra,
) -> SensorSetRecord:
    indices = [int(i) + 1 for i in positions]
    return SensorSetRecord(indices=indices, n=basis_n, method=method, r=r, **extra)


def _check_modes(basis: TailoredBasis) -> None:
    zero = np.flatnonzero(~np.any(basis.modes, axis=0))
    if zero.size:
        raise DegenerateBasis(f"basis mode {int(zero[0]) + 1} is identically zero")


def select_qr_sensors(
    basis: TailoredBasis,
    p: int,
    max_n: Optional[int] = None,
) -> SensorSetRecord:
    """Greedy QR-pivot placement.

    ``p == r`` pivots the columns of Ψ_rᵀ; ``p > r`` pivots Ψ_rΨ_rᵀ, whose
    pivot sequence is hierarchical, so growing ``p`` only appends sensors.
    """
    n, r = basis.n, basis.r
    if p < r:
        raise InfeasibleSensorCount(f"QR placement needs p >= r, got p={p} < r={r}")
    if p > n:
        raise InfeasibleSensorCount(f"cannot place p={p} sensors in a state of dimension {n}")
    _check_modes(basis)

    if p == r:
        factor = qr_pivot(basis.modes.T, p)
        method = SensorMethod.QR
    else:
        limit = settings.OVERSAMPLE_MAX_N if max_n is None else max_n
        if n > limit:
            raise OversampleLimitExceeded(
                f"oversampled placement forms an {n}x{n} matrix; n exceeds the limit of {limit}. "
                "Downsample the candidate locations first"
            )
        factor = qr_pivot(basis.modes @ basis.modes.T, p)
        method = SensorMethod.QR_OVERSAMPLED

    logger.debug(f"select_qr_sensors: n={n}, r={r}, p={p}, volume={factor.volume(r):.3e}")
    return _record(factor.pivots, n, method, r)


def select_deim_sensors(basis: TailoredBasis) -> SensorSetRecord:
    """DEIM: each new sensor sits at the largest residual of interpolating the next mode."""
    if basis.source != BasisSource.POD:
        raise UnsupportedBasis("DEIM placement needs a pod basis")
    _check_modes(basis)
    modes = basis.modes
    positions = [int(np.argmax(np.abs(modes[:, 0])))]

    for k in range(1, basis.r):
        block = modes[positions, :k]
        if condition_number(block) * EPS >= 1.0:
            raise DegenerateInterpolant(k + 1)
        try:
            coeffs = la.solve(block, modes[positions, k])
        except la.LinAlgError as e:
            raise DegenerateInterpolant(k + 1, f"interpolation system is singular at step {k + 1}: {e}")
        residual = modes[:, k] - modes[:, :k] @ coeffs
        positions.append(int(np.argmax(np.abs(residual))))

    return _record(np.asarray(positions), basis.n, SensorMethod.DEIM, basis.r)


def select_random_sensors(n: int, p: int, seed: int, generator: Optional[str] = None) -> SensorSetRecord:
    """``p`` distinct positions drawn uniformly without replacement, seeded."""
    if not 1 <= p <= n:
        raise InfeasibleSensorCount(f"need 1 <= p <= n, got p={p}, n={n}")
    rng = np.random.default_rng(seed)
    positions = rng.choice(n, size=p, replace=False)
    return _record(
        positions, n, SensorMethod.RANDOM, 0,
        seed=seed, generator=generator or settings.RANDOM_GENERATOR,
    )


# ==================== Objectives ====================

def _batched_values(thetas: np.ndarray, kind: CriterionKind) -> np.ndarray:
    """Criterion value for a stack of B×p×r selections."""
    if kind == CriterionKind.A_OPTIMAL:
        return np.einsum("bij,bij->b", thetas, thetas)
    if kind == CriterionKind.CONDITION:
        sv = np.linalg.svd(thetas, compute_uv=False)
        smax, smin = sv[:, 0], sv[:, -1]
        with np.errstate(divide="ignore", invalid="ignore"):
            kappa = smax / smin
        singular = (smin < KAPPA_FLOOR * smax) | (smax == 0.0)
        if thetas.shape[1] < thetas.shape[2]:
            singular[:] = True
        return np.where(singular, np.inf, kappa)

    gram = np.einsum("bki,bkj->bij", thetas, thetas)
    if kind == CriterionKind.D_OPTIMAL:
        sign, logdet = np.linalg.slogdet(gram)
        return np.where(sign > 0, logdet, -np.inf)
    return np.linalg.svd(gram, compute_uv=False)[:, -1]


def measurement_rows(basis: TailoredBasis, sensors: SensorSetRecord) -> np.ndarray:
    """Θ = CΨ_r, the basis rows at the sensor positions."""
    if sensors.n != basis.n:
        raise DimensionMismatch(f"sensor set is for n={sensors.n}, basis has n={basis.n}")
    sensors.check().raise_for(InputError)
    return basis.rows(sensors.positions)


def evaluate_criterion(
    basis: TailoredBasis,
    sensors: SensorSetRecord,
    criterion: PlacementCriterion,
) -> float:
    """log det ΘᵀΘ, trace ΘᵀΘ, σ_min(ΘᵀΘ) or κ(Θ) for Θ = CΨ_r.

    A singular information matrix gives ``-inf`` for the determinant criterion.
    """
    theta = measurement_rows(basis, sensors)
    if criterion.requires_full_rank and sensors.p < basis.r:
        raise InfeasibleSensorCount(
            f"{criterion.kind.value} needs p >= r, got p={sensors.p} < r={basis.r}"
        )
    if criterion.kind == CriterionKind.CONDITION:
        return condition_number(theta)
    return float(_batched_values(theta[None, :, :], criterion.kind)[0])


def _subsets(n: int, p: int, batch: int) -> Iterator[np.ndarray]:
    combos = itertools.combinations(range(n), p)
    while True:
        chunk = list(itertools.islice(combos, batch))
        if not chunk:
            return
        yield np.asarray(chunk, dtype=np.int64)


def brute_force_optimal(
    basis: TailoredBasis,
    p: int,
    criterion: PlacementCriterion,
    limit: Optional[int] = None,
    batch: Optional[int] = None,
) -> SensorSetRecord:
    """Exhaustive search over all C(n, p) subsets, lexicographically smallest winner on ties."""
    n, r = basis.n, basis.r
    if not 1 <= p <= n:
        raise InfeasibleSensorCount(f"need 1 <= p <= n, got p={p}, n={n}")
    if criterion.requires_full_rank and p < r:
        raise InfeasibleSensorCount(f"{criterion.kind.value} needs p >= r, got p={p} < r={r}")
    limit = settings.BRUTE_FORCE_LIMIT if limit is None else limit
    batch = settings.BRUTE_FORCE_BATCH if batch is None else batch
    total = math.comb(n, p)
    if total > limit:
        raise CombinatorialLimitExceeded(f"C({n}, {p}) = {total} subsets exceeds the limit of {limit}")

    sign = 1.0 if criterion.maximize else -1.0
    best_value = -np.inf
    best: Optional[np.ndarray] = None
    for subsets in _subsets(n, p, batch):
        scores = sign * _batched_values(basis.modes[subsets], criterion.kind)
        # argmax returns the first maximum, i.e. the lexicographically smallest subset
        j = int(np.argmax(scores))
        if best is None or scores[j] > best_value:
            best_value = float(scores[j])
            best = subsets[j]

    logger.info(f"brute_force_optimal: {total} subsets, best {criterion.kind.value} = {sign * best_value:.6g}")
    return _record(best, n, SensorMethod.BRUTE_FORCE, r, criterion=criterion.kind)


def compare_to_optimum(
    basis: TailoredBasis,
    sensors: SensorSetRecord,
    criterion: PlacementCriterion,
    limit: Optional[int] = None,
) -> CompareToOptimum:
    """Objective of ``sensors`` against the exhaustive optimum at the same p.

    ``ratio`` lies in [0, 1] with 1 meaning optimal: a determinant ratio for the
    d criterion, optimum/heuristic for the condition number, and
    heuristic/optimum otherwise.
    """
    heuristic = evaluate_criterion(basis, sensors, criterion)
    optimum_record = brute_force_optimal(basis, sensors.p, criterion, limit=limit)
    optimum = evaluate_criterion(basis, optimum_record, criterion)

    if criterion.kind == CriterionKind.D_OPTIMAL:
        ratio = 0.0 if heuristic == -np.inf else float(np.exp(heuristic - optimum))
    elif criterion.kind == CriterionKind.CONDITION:
        ratio = 0.0 if math.isinf(heuristic) else optimum / heuristic
    elif optimum == 0.0:
        raise ZeroMatrix("optimal objective is zero; ratio undefined")
    else:
        ratio = heuristic / optimum
    return CompareToOptimum(
        heuristic_value=heuristic,
        optimum_value=optimum,
        ratio=ratio,
        optimum_indices=optimum_record.indices,
    )
