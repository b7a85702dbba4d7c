"""Dense kernels: QR with column pivoting, truncated SVD, pseudoinverse solve, condition number."""

import logging
from typing import Tuple

import numpy as np
import scipy.linalg as la

from sparsense.core.errors import DimensionMismatch, NonFiniteInput, RankOutOfRange, ZeroMatrix
from sparsense.core.validators import require_matrix
from sparsense.models.factor import PivotedQrFactor, SvdFactor

logger = logging.getLogger(__name__)

EPS = np.finfo(np.float64).eps
_SQRT_EPS = np.sqrt(EPS)
KAPPA_FLOOR = 1e-300


def _householder(x: np.ndarray) -> Tuple[np.ndarray, float, float]:
    """Reflector v with (I - 2vvᵀ/vᵀv)x = alpha·e₁; returns (v, vᵀv, alpha)."""
    norm_x = np.sqrt(np.dot(x, x))
    if norm_x == 0.0:
        return x, 0.0, 0.0
    alpha = -norm_x if x[0] >= 0 else norm_x
    v = x.copy()
    v[0] -= alpha
    return v, float(np.dot(v, v)), float(alpha)


def qr_pivot(b: np.ndarray, p: int) -> PivotedQrFactor:
    """Greedy Householder QR with column pivoting, stopped after ``p`` pivots.

    At every step the remaining column of largest residual 2-norm becomes the
    next pivot; exact ties go to the lowest column index. Column norms are
    downdated after each reflector and recomputed when cancellation makes the
    downdate unreliable. Zero residual columns are still pivoted, giving
    ``rdiag`` entries of 0.
    """
    a = require_matrix(b, "B").copy()
    n_rows, n_cols = a.shape
    if not 1 <= p <= n_cols:
        raise RankOutOfRange(f"p must lie in [1, {n_cols}], got {p}")

    # einsum fixes the summation order, so equal columns give equal norms
    norms = np.sqrt(np.einsum("ij,ij->j", a, a))
    original = norms.copy()
    available = np.ones(n_cols, dtype=bool)
    pivots = np.empty(p, dtype=np.int64)
    rdiag = np.zeros(p)
    reflectors = []

    for k in range(p):
        candidates = np.where(available, norms, -np.inf)
        j = int(np.argmax(candidates))
        pivots[k] = j
        available[j] = False
        if k >= n_rows:
            reflectors.append(None)
            continue

        v, vtv, alpha = _householder(a[k:, j])
        rdiag[k] = abs(alpha)
        if vtv > 0.0:
            rest = np.flatnonzero(available)
            if rest.size:
                block = a[k:, rest]
                block -= np.outer(v, (2.0 / vtv) * (v @ block))
                a[k:, rest] = block
            a[k, j] = alpha
            a[k + 1:, j] = 0.0
            reflectors.append((v, vtv))
        else:
            reflectors.append(None)

        # downdate the remaining column norms
        rest = np.flatnonzero(available)
        if rest.size == 0:
            continue
        if k + 1 >= n_rows:
            norms[rest] = 0.0
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(norms[rest] > 0, np.abs(a[k, rest]) / norms[rest], 0.0)
        shrink = np.maximum(0.0, 1.0 - ratio ** 2)
        updated = norms[rest] * np.sqrt(shrink)
        with np.errstate(divide="ignore", invalid="ignore"):
            stale = np.where(original[rest] > 0, updated / original[rest], 0.0) <= _SQRT_EPS
        if stale.any():
            cols = rest[stale]
            tail = a[k + 1:, cols]
            updated[stale] = np.sqrt(np.einsum("ij,ij->j", tail, tail))
            original[cols] = updated[stale]
        norms[rest] = updated

    k_eff = min(p, n_rows)
    q = np.eye(n_rows, k_eff)
    for step in range(k_eff - 1, -1, -1):
        reflector = reflectors[step]
        if reflector is None:
            continue
        v, vtv = reflector
        q[step:, :] -= np.outer(v, (2.0 / vtv) * (v @ q[step:, :]))

    rest = np.flatnonzero(available)
    order = np.concatenate([pivots, rest])
    r_upper = np.triu(a[:k_eff, order])
    logger.debug(f"qr_pivot: {n_rows}x{n_cols}, {p} pivots, last |r_kk| = {rdiag[-1]:.3e}")
    return PivotedQrFactor(pivots=pivots, rdiag=rdiag, q=q, r_upper=r_upper, order=order)


def _fix_signs(u: np.ndarray, vt: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Make each mode's entry of largest magnitude nonnegative."""
    lead = np.argmax(np.abs(u), axis=0)
    signs = np.sign(u[lead, np.arange(u.shape[1])])
    signs[signs == 0] = 1.0
    return u * signs, vt * signs[:, None]


def thin_svd(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full thin SVD (u, s, vt) with the sign convention applied."""
    x = require_matrix(x, "X")
    u, s, vt = la.svd(x, full_matrices=False, lapack_driver="gesdd")
    u, vt = _fix_signs(u, vt)
    return u, s, vt


def truncated_svd(x: np.ndarray, r: int) -> SvdFactor:
    """Leading ``r`` singular triplets of X (Eckart–Young optimal rank-r approximation)."""
    x = require_matrix(x, "X")
    limit = min(x.shape)
    if not 1 <= r <= limit:
        raise RankOutOfRange(f"r must lie in [1, {limit}], got {r}")
    u, s, vt = thin_svd(x)
    return SvdFactor(modes=u[:, :r], sigmas=s[:r], right=vt[:r, :].T)


def least_squares_pinv(theta: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Minimum-norm least-squares solution of theta·â ≈ y.

    ``y`` may be a vector or a p×k matrix of right-hand sides. Singular values
    below max(p, r)·ε·σ_max are treated as zero.
    """
    theta = require_matrix(theta, "theta")
    y = np.asarray(y, dtype=np.float64)
    if not np.all(np.isfinite(y)):
        raise NonFiniteInput("measurements contain NaN or Inf")
    p, r = theta.shape
    if y.shape[0] != p or y.ndim > 2:
        raise DimensionMismatch(f"theta has {p} rows but y has shape {y.shape}")
    if p < r:
        raise DimensionMismatch(f"need at least as many measurements as unknowns, got p={p} < r={r}")
    if not np.any(y):
        return np.zeros((r,) + y.shape[1:])
    cond = max(p, r) * EPS
    solution, _, _, _ = la.lstsq(theta, y, cond=cond, lapack_driver="gelsd")
    return solution


def condition_number(theta: np.ndarray) -> float:
    """σ_max/σ_min of theta; +inf when σ_min < 1e-300·σ_max."""
    theta = require_matrix(theta, "theta")
    sv = la.svdvals(theta)
    if sv.size == 0 or sv[0] == 0.0:
        raise ZeroMatrix("condition number of an all-zero matrix is undefined")
    if theta.shape[0] < theta.shape[1]:
        # wide matrices have a nontrivial null space
        return float("inf")
    smin = sv[-1]
    if smin < KAPPA_FLOOR * sv[0]:
        return float("inf")
    return float(sv[0] / smin)
