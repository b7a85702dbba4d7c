"""Reconstruction, noise and sweep models."""

from enum import Enum
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from .base import ArrayModel, as_float_array
from .sensors import SensorSetRecord


class ReconstructionResult(ArrayModel):
    """Estimated coefficients â and state x̂ = Ψ_r â (+ mean)."""

    coeffs: np.ndarray = Field(..., description="estimated coefficients, length r")
    state: np.ndarray = Field(..., description="reconstructed state, length n")
    rel_error: Optional[float] = Field(None, ge=0.0, description="‖x − x̂‖₂/‖x‖₂ against the truth")
    kappa: float = Field(..., description="condition number of Θ")
    sensors: SensorSetRecord

    @field_validator("coeffs", "state", mode="before")
    @classmethod
    def _coerce(cls, v):
        return as_float_array(v, ndim=1)


class NoiseModel(BaseModel):
    """I.i.d. zero-mean Gaussian sensor noise with standard deviation eta."""

    eta: float = Field(0.0, ge=0.0, description="noise standard deviation")
    seed: int = Field(0, description="generator seed")

    model_config = {"frozen": True}


class CovarianceReport(BaseModel):
    """Monte-Carlo coefficient-error covariance against η²·trace((ΘᵀΘ)⁻¹)."""

    empirical_cov_trace: float
    predicted_trace: float
    ratio: float
    trials: int
    eta: float
    seed: int


class SweepMethod(str, Enum):
    QR = "qr"
    DEIM = "deim"
    RANDOM = "random"
    POD_PROJECTION = "pod_projection"


class PRule(str, Enum):
    P_EQUALS_R = "p_equals_r"
    P_EQUALS_2R = "p_equals_2r"

    def sensors_for(self, r: int) -> int:
        return r if self == PRule.P_EQUALS_R else 2 * r


class NoiseMethod(str, Enum):
    """Methods compared in a noise sweep."""
    QR = "qr"
    QR_OVERSAMPLED = "qr_2r"
    DEIM = "deim"
    POD_PROJECTION = "pod_projection"


class SweepRow(BaseModel):
    r: int
    p: int
    mean_rel_error: float
    std_rel_error: float


class NoiseSweepRow(BaseModel):
    method: NoiseMethod
    eta: float
    mean_rel_error: float
    kappa: float


class NoiseSweepResult(BaseModel):
    rows: List[NoiseSweepRow]
    monotone: Dict[str, bool]
    r: int


class SplitKind(str, Enum):
    CHRONO = "chrono"
    INTERLEAVE = "interleave"
    RANDOM = "random"


class SplitRule(BaseModel):
    """Train/test split of snapshot columns.

    ``chrono[:F]`` keeps the last fraction F for testing, ``interleave:K`` sends
    every K-th snapshot to the test set, ``random:SEED[:F]`` draws a seeded
    test subset of fraction F.
    """

    kind: SplitKind = SplitKind.INTERLEAVE
    k: int = Field(5, ge=2)
    seed: int = 0
    test_fraction: float = Field(0.2, gt=0.0, lt=1.0)

    model_config = {"frozen": True}

    @classmethod
    def parse(cls, text: str) -> "SplitRule":
        parts = text.strip().split(":")
        kind = SplitKind(parts[0].lower())
        if kind == SplitKind.CHRONO:
            return cls(kind=kind, test_fraction=float(parts[1])) if len(parts) > 1 else cls(kind=kind)
        if kind == SplitKind.INTERLEAVE:
            if len(parts) != 2:
                raise ValueError("interleave split needs interleave:K")
            return cls(kind=kind, k=int(parts[1]))
        if len(parts) < 2:
            raise ValueError("random split needs random:SEED")
        if len(parts) > 2:
            return cls(kind=kind, seed=int(parts[1]), test_fraction=float(parts[2]))
        return cls(kind=kind, seed=int(parts[1]))

    def __str__(self) -> str:
        if self.kind == SplitKind.INTERLEAVE:
            return f"interleave:{self.k}"
        if self.kind == SplitKind.CHRONO:
            return f"chrono:{self.test_fraction}"
        return f"random:{self.seed}:{self.test_fraction}"


class CompareToOptimum(BaseModel):
    """Heuristic objective value against the exhaustive optimum."""

    heuristic_value: float
    optimum_value: float
    ratio: float
    optimum_indices: List[int]
