"""Tailored basis and rank specification models."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .base import ArrayModel, as_float_array


class BasisSource(str, Enum):
    """Basis origin enumeration."""
    POD = "pod"
    VANDERMONDE = "vandermonde"


class RankKind(str, Enum):
    FIXED = "fixed"
    ENERGY = "energy"
    AUTO = "auto"


class RankSpec(BaseModel):
    """Rank selection rule: ``fixed:N``, ``energy:F`` or ``auto``."""

    kind: RankKind
    value: Optional[float] = None

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_value(self):
        if self.kind == RankKind.FIXED:
            if self.value is None or self.value < 1 or int(self.value) != self.value:
                raise ValueError("fixed rank needs a positive integer")
        elif self.kind == RankKind.ENERGY:
            if self.value is None or not 0.0 < self.value <= 1.0:
                raise ValueError("energy fraction must lie in (0, 1]")
        return self

    @classmethod
    def fixed(cls, r: int) -> "RankSpec":
        return cls(kind=RankKind.FIXED, value=r)

    @classmethod
    def energy(cls, fraction: float) -> "RankSpec":
        return cls(kind=RankKind.ENERGY, value=fraction)

    @classmethod
    def auto(cls) -> "RankSpec":
        return cls(kind=RankKind.AUTO)

    @classmethod
    def parse(cls, text: str) -> "RankSpec":
        kind, _, value = text.strip().partition(":")
        kind = kind.lower()
        if kind == RankKind.AUTO.value:
            return cls.auto()
        if kind == RankKind.FIXED.value:
            return cls.fixed(int(value))
        if kind == RankKind.ENERGY.value:
            return cls.energy(float(value))
        raise ValueError(f"unknown rank spec '{text}', expected fixed:N, energy:F or auto")

    def __str__(self) -> str:
        if self.kind == RankKind.AUTO:
            return "auto"
        if self.kind == RankKind.FIXED:
            return f"fixed:{int(self.value)}"
        return f"energy:{self.value}"


class TailoredBasis(ArrayModel):
    """Rank-r basis Ψ_r trained on, or constructed for, a signal class."""

    modes: np.ndarray = Field(..., description="n×r mode matrix")
    sigmas: np.ndarray = Field(default_factory=lambda: np.zeros(0), description="retained singular values")
    mean: Optional[np.ndarray] = Field(None, description="mean subtracted during training")
    source: BasisSource = Field(..., description="pod or vandermonde")
    spectrum: Optional[np.ndarray] = Field(None, description="full training spectrum")
    grid: Optional[np.ndarray] = Field(None, description="sample points of a polynomial basis")

    @field_validator("modes", mode="before")
    @classmethod
    def _coerce_modes(cls, v):
        return as_float_array(v, ndim=2)

    @field_validator("sigmas", mode="before")
    @classmethod
    def _coerce_sigmas(cls, v):
        return as_float_array(v, ndim=1)

    @field_validator("mean", "spectrum", "grid", mode="before")
    @classmethod
    def _coerce_optional(cls, v):
        return None if v is None else as_float_array(v, ndim=1)

    @model_validator(mode="after")
    def _check_invariants(self):
        n, r = self.modes.shape
        if r < 1 or n < r:
            raise ValueError(f"basis must satisfy 1 <= r <= n, got n={n}, r={r}")
        if not np.all(np.isfinite(self.modes)):
            raise ValueError("basis modes contain NaN or Inf")
        if self.mean is not None and self.mean.shape[0] != n:
            raise ValueError(f"mean has length {self.mean.shape[0]}, expected {n}")
        if self.source == BasisSource.POD:
            if self.sigmas.shape[0] != r:
                raise ValueError(f"pod basis needs {r} singular values, got {self.sigmas.shape[0]}")
            if np.any(self.sigmas <= 0):
                raise ValueError("pod singular values must be strictly positive")
            if np.any(np.diff(self.sigmas) > 0):
                raise ValueError("pod singular values must be non-increasing")
        if self.grid is not None and self.grid.shape[0] != n:
            raise ValueError(f"grid has length {self.grid.shape[0]}, expected {n}")
        return self

    @property
    def n(self) -> int:
        return int(self.modes.shape[0])

    @property
    def r(self) -> int:
        return int(self.modes.shape[1])

    @property
    def energy_fraction(self) -> Optional[float]:
        """Share of Σσ_i captured by the retained modes, when the spectrum is known."""
        if self.spectrum is None or self.spectrum.sum() == 0:
            return None
        return float(self.sigmas.sum() / self.spectrum.sum())

    def rows(self, positions: np.ndarray) -> np.ndarray:
        """Θ = CΨ_r for 0-based sensor positions."""
        return self.modes[positions, :]
