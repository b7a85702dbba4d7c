"""Tailored bases: POD from snapshots and monomial (Vandermonde) bases."""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel

from sparsense.core.errors import (
    DegenerateAfterCentering,
    DimensionMismatch,
    InfeasibleRankSpec,
    InputError,
    NonMonotoneInput,
    RankOutOfRange,
    TruncatedSpectrum,
    UnsupportedBasis,
)
from sparsense.core.validators import GridValidator, require_finite, require_vector
from sparsense.models.basis import BasisSource, RankKind, RankSpec, TailoredBasis
from sparsense.models.snapshot import SnapshotMatrix
from .factor import EPS, thin_svd

logger = logging.getLogger(__name__)


class HardThreshold(BaseModel):
    """Singular-value hard threshold τ = ω(β)·median(σ) and the rank it keeps."""

    rank: int
    tau: float
    omega: float
    beta: float
    median: float
    floored: bool


def omega_unknown_noise(beta: float) -> float:
    """Polynomial approximation of the optimal threshold coefficient for unknown noise level."""
    return 0.56 * beta ** 3 - 0.95 * beta ** 2 + 1.82 * beta + 1.43


def hard_threshold(sigmas: np.ndarray, n: int, m: int) -> HardThreshold:
    """Full threshold computation; see ``hard_threshold_rank``."""
    sigmas = require_finite(sigmas, "sigmas").reshape(-1)
    if sigmas.size == 0:
        raise InputError("singular value list is empty")
    if np.any(np.diff(sigmas) > 0):
        raise NonMonotoneInput("singular values must be non-increasing")
    if sigmas.size != min(n, m):
        raise TruncatedSpectrum(
            f"automatic rank needs the full spectrum of {min(n, m)} values, got {sigmas.size}"
        )
    beta = min(n, m) / max(n, m)
    omega = omega_unknown_noise(beta)
    median = float(np.median(sigmas))
    tau = omega * median
    count = int(np.count_nonzero(sigmas > tau))
    floored = count == 0
    if floored:
        logger.warning(f"hard threshold {tau:.3e} exceeds every singular value; keeping rank 1")
    return HardThreshold(rank=max(count, 1), tau=tau, omega=omega, beta=beta, median=median, floored=floored)


def hard_threshold_rank(sigmas: np.ndarray, n: int, m: int) -> int:
    """Number of singular values above ω(β)·median(σ), at least 1."""
    return hard_threshold(sigmas, n, m).rank


def _select_rank(spectrum: np.ndarray, rank_spec: RankSpec, n: int, m: int) -> int:
    if rank_spec.kind == RankKind.FIXED:
        r = int(rank_spec.value)
    elif rank_spec.kind == RankKind.ENERGY:
        total = spectrum.sum()
        cumulative = np.cumsum(spectrum) / total
        # smallest r whose cumulative share reaches the target
        r = int(np.searchsorted(cumulative, rank_spec.value, side="left")) + 1
        r = min(r, spectrum.size)
    else:
        if m < 2:
            raise InfeasibleRankSpec("automatic rank needs at least two snapshots")
        r = hard_threshold_rank(spectrum, n, m)
    if not 1 <= r <= spectrum.size:
        raise InfeasibleRankSpec(f"rank {r} not available from {spectrum.size} singular values")
    if spectrum[r - 1] <= 0.0:
        raise InfeasibleRankSpec(f"rank {r} exceeds the numerical rank of the training data")
    return r


def fit_pod(
    snapshots: SnapshotMatrix,
    rank_spec: RankSpec,
    mean_subtract: bool = True,
) -> TailoredBasis:
    """Train a POD basis: optional mean subtraction, SVD, rank selection."""
    x = snapshots.values
    n, m = x.shape
    scale = float(np.max(np.abs(x)))
    mean: Optional[np.ndarray] = None
    if mean_subtract:
        mean = x.mean(axis=1)
        x = x - mean[:, None]

    u, s, _ = thin_svd(x)
    if s.size == 0 or s[0] <= n * m * EPS * scale:
        raise DegenerateAfterCentering(
            "training data has no variance"
            + (" after mean subtraction" if mean_subtract else "")
        )
    r = _select_rank(s, rank_spec, n, m)
    logger.info(f"fit_pod: n={n}, m={m}, rank_spec={rank_spec}, r={r}")
    return TailoredBasis(
        modes=u[:, :r],
        sigmas=s[:r],
        mean=mean,
        source=BasisSource.POD,
        spectrum=s,
    )


def project_coefficients(basis: TailoredBasis, x: np.ndarray) -> np.ndarray:
    """Orthogonal projection a = Ψ_rᵀ(x − mean)."""
    if basis.source != BasisSource.POD:
        raise UnsupportedBasis("orthogonal projection needs an orthonormal (pod) basis")
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = require_vector(x, basis.n, "x")
    elif x.shape[0] != basis.n:
        raise DimensionMismatch(f"x has {x.shape[0]} rows, expected {basis.n}")
    else:
        x = require_finite(x, "x")
    if basis.mean is not None:
        x = x - (basis.mean if x.ndim == 1 else basis.mean[:, None])
    return basis.modes.T @ x


def vandermonde_basis(grid: np.ndarray, r: int) -> TailoredBasis:
    """Monomial basis [1 | x | x² | … | x^(r−1)] sampled on ``grid``."""
    grid = np.asarray(grid, dtype=np.float64)
    check = GridValidator.validate_unit_grid(grid)
    if not check.ok:
        raise NonMonotoneInput(check.summary())
    if not 1 <= r <= grid.size:
        raise RankOutOfRange(f"r must lie in [1, {grid.size}], got {r}")
    modes = np.vander(grid, r, increasing=True)
    return TailoredBasis(modes=modes, source=BasisSource.VANDERMONDE, grid=grid)


def random_orthonormal(n: int, r: int, rng: np.random.Generator) -> np.ndarray:
    """n×r matrix with orthonormal columns drawn from the Haar measure."""
    q, upper = np.linalg.qr(rng.standard_normal((n, r)))
    return q * np.sign(np.diag(upper))


def synthetic_snapshots(
    n: int,
    m: int,
    sigmas: np.ndarray,
    seed: int = 0,
    noise: float = 0.0,
) -> SnapshotMatrix:
    """Snapshots X = U·diag(σ)·Vᵀ (+ Gaussian noise) with random orthonormal U, V."""
    sigmas = np.asarray(sigmas, dtype=np.float64).reshape(-1)
    k = sigmas.size
    if not 1 <= k <= min(n, m):
        raise RankOutOfRange(f"need 1 <= len(sigmas) <= min(n, m) = {min(n, m)}, got {k}")
    rng = np.random.default_rng(seed)
    u = random_orthonormal(n, k, rng)
    v = random_orthonormal(m, k, rng)
    x = (u * sigmas) @ v.T
    if noise > 0.0:
        x = x + noise * rng.standard_normal((n, m))
    return SnapshotMatrix(values=x)
