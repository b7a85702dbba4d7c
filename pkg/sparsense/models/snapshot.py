"""Snapshot matrix model."""

from typing import Optional, Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator

from sparsense.core.validators import MatrixValidator
from .base import ArrayModel, as_float_array


class SnapshotMatrix(ArrayModel):
    """n×m data matrix whose column j is snapshot x_j."""

    values: np.ndarray = Field(..., description="dense real n×m array")
    grid: Optional[Tuple[int, int]] = Field(None, description="(height, width) for image-shaped states")
    mean: Optional[np.ndarray] = Field(None, description="stored temporal mean, length n")

    @field_validator("values", mode="before")
    @classmethod
    def _coerce_values(cls, v):
        return as_float_array(v, ndim=2)

    @field_validator("mean", mode="before")
    @classmethod
    def _coerce_mean(cls, v):
        return None if v is None else as_float_array(v, ndim=1)

    @model_validator(mode="after")
    def _check_invariants(self):
        result = MatrixValidator.validate_snapshot(self.values, self.grid, self.mean)
        if not result.ok:
            raise ValueError(result.summary())
        return self

    @property
    def rows(self) -> int:
        return int(self.values.shape[0])

    @property
    def cols(self) -> int:
        return int(self.values.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> np.ndarray:
        return self.values[:, j]

    def select_columns(self, columns: np.ndarray) -> "SnapshotMatrix":
        """Sub-matrix of the given 0-based columns, keeping grid and mean."""
        return SnapshotMatrix(values=self.values[:, columns], grid=self.grid, mean=self.mean)
