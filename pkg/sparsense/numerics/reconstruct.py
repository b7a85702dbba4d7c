"""Gappy reconstruction from point measurements and the measurement-noise model."""

import logging
import math
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as la

from sparsense.core.errors import InfeasibleSensorCount, InputError, SingularInterpolant
from sparsense.core.validators import require_finite, require_matrix, require_vector
from sparsense.models.basis import TailoredBasis
from sparsense.models.reconstruction import CovarianceReport, NoiseModel, ReconstructionResult
from sparsense.models.sensors import SensorSetRecord
from .factor import condition_number, least_squares_pinv
from .placement import measurement_rows

logger = logging.getLogger(__name__)


def relative_errors(truth: np.ndarray, estimate: np.ndarray) -> np.ndarray:
    """Column-wise ‖x − x̂‖₂/‖x‖₂; a zero truth column gives 0 if matched exactly, else inf."""
    truth = np.atleast_2d(truth.T).T
    estimate = np.atleast_2d(estimate.T).T
    diff = np.linalg.norm(truth - estimate, axis=0)
    scale = np.linalg.norm(truth, axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(scale > 0, diff / scale, np.where(diff > 0, np.inf, 0.0))
    return out


def estimate_states(basis: TailoredBasis, positions: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Coefficients Θ⁺(y − C·mean) and states Ψ_r·â (+ mean) for one or many measurement columns."""
    theta = basis.rows(positions)
    if basis.mean is not None:
        offset = basis.mean[positions]
        y = y - (offset if y.ndim == 1 else offset[:, None])
    coeffs = least_squares_pinv(theta, y)
    states = basis.modes @ coeffs
    if basis.mean is not None:
        states = states + (basis.mean if states.ndim == 1 else basis.mean[:, None])
    return coeffs, states


def gappy_reconstruct(
    basis: TailoredBasis,
    sensors: SensorSetRecord,
    y: np.ndarray,
    truth: Optional[np.ndarray] = None,
) -> ReconstructionResult:
    """Estimate coefficients from p point measurements and rebuild the full state.

    ``y`` holds raw measurements; when the basis stores a mean its sensor
    entries are subtracted before the solve and the mean is added back.
    """
    theta = measurement_rows(basis, sensors)
    p, r = theta.shape
    if p < r:
        raise InfeasibleSensorCount(f"reconstruction needs p >= r, got p={p} < r={r}")
    y = require_vector(y, p, "measurements")
    kappa = condition_number(theta)
    if p == r and math.isinf(kappa):
        raise SingularInterpolant(f"Θ is singular for sensors {sensors.indices}")

    coeffs, state = estimate_states(basis, sensors.positions, y)

    rel_error = None
    if truth is not None:
        truth = require_vector(truth, basis.n, "truth")
        rel_error = float(relative_errors(truth, state)[0])
    logger.debug(f"gappy_reconstruct: p={p}, r={r}, kappa={kappa:.3e}, rel_error={rel_error}")
    return ReconstructionResult(coeffs=coeffs, state=state, rel_error=rel_error, kappa=kappa, sensors=sensors)


def add_measurement_noise(y: np.ndarray, model: NoiseModel) -> np.ndarray:
    """y + ξ with ξ ~ N(0, η²) i.i.d.

    The draw is ``eta`` times a fixed standard-normal sequence for the seed, so
    runs that differ only in ``eta`` share their noise realisation.
    """
    y = require_finite(y, "measurements")
    if model.eta == 0.0:
        return y.copy()
    rng = np.random.default_rng(model.seed)
    return y + model.eta * rng.standard_normal(y.shape)


def covariance_trace_check(theta: np.ndarray, eta: float, trials: int, seed: int) -> CovarianceReport:
    """Monte-Carlo trace of Cov(â − a₀) against η²·trace((ΘᵀΘ)⁻¹)."""
    theta = require_matrix(theta, "theta")
    p, r = theta.shape
    if p < r:
        raise InfeasibleSensorCount(f"covariance check needs p >= r, got p={p} < r={r}")
    if eta < 0:
        raise InputError(f"noise level must be nonnegative, got {eta}")
    if trials < 2:
        raise InputError(f"need at least 2 trials, got {trials}")
    if math.isinf(condition_number(theta)):
        raise SingularInterpolant("Θ is singular; the coefficient covariance is unbounded")

    if eta == 0.0:
        return CovarianceReport(
            empirical_cov_trace=0.0, predicted_trace=0.0, ratio=1.0,
            trials=trials, eta=eta, seed=seed,
        )

    sv = la.svdvals(theta)
    predicted = eta ** 2 * float(np.sum(1.0 / sv ** 2))

    rng = np.random.default_rng(seed)
    a0 = rng.standard_normal(r)
    y = (theta @ a0)[:, None] + eta * rng.standard_normal((p, trials))
    errors = least_squares_pinv(theta, y) - a0[:, None]
    empirical = float(np.trace(np.atleast_2d(np.cov(errors))))

    ratio = empirical / predicted
    logger.info(f"covariance check: empirical={empirical:.4e}, predicted={predicted:.4e}, ratio={ratio:.4f}")
    return CovarianceReport(
        empirical_cov_trace=empirical, predicted_trace=predicted, ratio=ratio,
        trials=trials, eta=eta, seed=seed,
    )


def coefficient_covariance_check(
    basis: TailoredBasis,
    sensors: SensorSetRecord,
    eta: float,
    trials: int,
    seed: int,
) -> CovarianceReport:
    return covariance_trace_check(measurement_rows(basis, sensors), eta, trials, seed)
