"""Factorization result models."""

import numpy as np
from pydantic import Field, field_validator

from .base import ArrayModel, as_float_array, as_index_array


class PivotedQrFactor(ArrayModel):
    """Column-pivoted QR of B: B[:, order] ≈ q @ r_upper.

    ``pivots`` are 0-based column indices in selection order and ``r_upper``
    has its columns permuted so that the pivot columns come first.
    """

    pivots: np.ndarray = Field(..., description="0-based pivot columns in selection order")
    rdiag: np.ndarray = Field(..., description="|r_ii| for each pivot")
    q: np.ndarray = Field(..., description="orthonormal factor, n_rows×k")
    r_upper: np.ndarray = Field(..., description="upper-triangular factor, k×n_cols, pivot columns first")
    order: np.ndarray = Field(..., description="full column permutation (pivots, then the rest ascending)")

    @field_validator("pivots", "order", mode="before")
    @classmethod
    def _coerce_index(cls, v):
        return as_index_array(v)

    @field_validator("rdiag", mode="before")
    @classmethod
    def _coerce_rdiag(cls, v):
        return as_float_array(v, ndim=1)

    @field_validator("q", "r_upper", mode="before")
    @classmethod
    def _coerce_matrix(cls, v):
        return as_float_array(v, ndim=2)

    @property
    def k(self) -> int:
        return int(self.pivots.shape[0])

    def volume(self, count: int) -> float:
        """Product of the first ``count`` diagonal magnitudes."""
        return float(np.prod(self.rdiag[:count]))


class SvdFactor(ArrayModel):
    """Leading singular triplets X ≈ modes · diag(sigmas) · rightᵀ."""

    modes: np.ndarray = Field(..., description="n×r left singular vectors")
    sigmas: np.ndarray = Field(..., description="non-increasing singular values")
    right: np.ndarray = Field(..., description="m×r right singular vectors")

    @field_validator("modes", "right", mode="before")
    @classmethod
    def _coerce_matrix(cls, v):
        return as_float_array(v, ndim=2)

    @field_validator("sigmas", mode="before")
    @classmethod
    def _coerce_sigmas(cls, v):
        return as_float_array(v, ndim=1)

    @property
    def rank(self) -> int:
        return int(self.sigmas.shape[0])

    def approximation(self) -> np.ndarray:
        return (self.modes * self.sigmas) @ self.right.T
