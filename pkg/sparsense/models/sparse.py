"""Compressed-sensing models."""

from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .base import ArrayModel, as_float_array


class SparseSolution(ArrayModel):
    """Sparse coefficient vector s given by its support (0-based) and values."""

    support: List[int] = Field(default_factory=list, description="0-based coefficient indices")
    values: np.ndarray = Field(default_factory=lambda: np.zeros(0), description="coefficients on the support")
    residual_norm: float = Field(..., ge=0.0)
    residual_history: List[float] = Field(default_factory=list, description="residual norm after each step")
    reduced: bool = Field(False, description="support shrunk because of a rank-deficient pivot block")

    @field_validator("values", mode="before")
    @classmethod
    def _coerce(cls, v):
        return as_float_array(v, ndim=1)

    @model_validator(mode="after")
    def _check(self):
        if len(set(self.support)) != len(self.support):
            raise ValueError("support indices must be distinct")
        if len(self.support) != self.values.shape[0]:
            raise ValueError("support and values differ in length")
        return self

    @property
    def k(self) -> int:
        return len(self.support)

    def dense(self, size: int) -> np.ndarray:
        s = np.zeros(size)
        s[self.support] = self.values
        return s


class UniversalKind(str, Enum):
    DCT = "dct"
    FOURIER = "fourier"


class UniversalBasisSpec(BaseModel):
    """Complete generic transform basis of dimension n."""

    kind: UniversalKind = UniversalKind.DCT
    n: int = Field(..., ge=1)

    model_config = {"frozen": True}


class SamplingMode(str, Enum):
    RANDOM = "random"
    EQUISPACED = "equispaced"


class ThreeToneReport(BaseModel):
    """Outcome of recovering a three-tone signal from p of n samples."""

    recovered_bins: List[float]
    true_bins: List[float]
    match: bool
    n: int
    p: int
    seed: int
    k_max: int
    sampling: SamplingMode
    solver: str = "omp"
    residual_norm: float
    measurements_per_sparsity: float = Field(..., description="p / (K log(n/K))")
    sample_indices: Optional[List[int]] = Field(None, description="1-based sample positions")


class FeketeReport(BaseModel):
    """Polynomial interpolation with QR-pivot nodes against equispaced nodes."""

    degree: int
    grid: int
    qr_nodes: List[float]
    equispaced_nodes: List[float]
    qr_sup_error: float
    equispaced_sup_error: float
    qr_kappa: float
    equispaced_kappa: float
    basis_kappa: float
