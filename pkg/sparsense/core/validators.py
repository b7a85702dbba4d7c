"""Validation utilities for matrices, sensor sets and grids."""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from sparsense.core.errors import DimensionMismatch, NonFiniteInput


class InputCheck(BaseModel):
    """Problems found in one input; messages are prefixed with ``subject``."""

    subject: str
    problems: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def flag(self, problem: str) -> None:
        self.problems.append(problem)

    def summary(self) -> str:
        return f"{self.subject}: " + "; ".join(self.problems)

    def raise_for(self, error_cls: type) -> None:
        if self.problems:
            raise error_cls(self.summary())


class MatrixValidator:
    """Checks on dense real arrays."""

    @classmethod
    def first_non_finite(cls, values: np.ndarray) -> Optional[Tuple[int, int, float]]:
        """Return the 1-based (row, col, value) of the first NaN/Inf in column-major order."""
        mask = ~np.isfinite(values)
        if not mask.any():
            return None
        arr = np.atleast_2d(values) if values.ndim < 2 else values
        bad = np.atleast_2d(mask) if mask.ndim < 2 else mask
        # column-major scan matches the on-disk order
        flat = np.flatnonzero(bad.T.ravel())[0]
        col, row = divmod(int(flat), arr.shape[0])
        return row + 1, col + 1, float(arr[row, col])

    @classmethod
    def validate_snapshot(
        cls,
        values: np.ndarray,
        grid: Optional[Sequence[int]] = None,
        mean: Optional[np.ndarray] = None,
    ) -> InputCheck:
        result = InputCheck(subject="snapshot matrix")
        if values.ndim != 2:
            result.flag(f"snapshot values must be 2-D, got {values.ndim}-D")
            return result
        rows, cols = values.shape
        if rows == 0 or cols == 0:
            result.flag(f"matrix is empty ({rows}x{cols})")
        bad = cls.first_non_finite(values)
        if bad is not None:
            result.flag(f"non-finite value {bad[2]!r} at row {bad[0]}, column {bad[1]}")
        if grid is not None:
            height, width = grid
            if height * width != rows:
                result.flag(f"grid {height}x{width} does not match {rows} rows")
        if mean is not None and len(mean) != rows:
            result.flag(f"mean has length {len(mean)}, expected {rows}")
        return result


class SensorValidator:
    """Checks on 1-based sensor index lists."""

    @classmethod
    def validate_indices(cls, indices: Sequence[int], n: int) -> InputCheck:
        result = InputCheck(subject="sensor set")
        if n < 1:
            result.flag(f"state dimension must be positive, got {n}")
        if len(indices) < 1:
            result.flag("sensor set must contain at least one index")
        seen = set()
        for idx in indices:
            if idx in seen:
                result.flag(f"duplicate sensor index {idx}")
            seen.add(idx)
            if not 1 <= idx <= n:
                result.flag(f"sensor index {idx} outside [1, {n}]")
        return result


class GridValidator:
    """Checks on 1-D sample grids."""

    @classmethod
    def validate_unit_grid(cls, grid: np.ndarray) -> InputCheck:
        result = InputCheck(subject="sample grid")
        if grid.ndim != 1 or grid.size == 0:
            result.flag("grid must be a non-empty 1-D array")
            return result
        if not np.all(np.isfinite(grid)):
            result.flag("grid contains non-finite values")
            return result
        if np.any(np.diff(grid) <= 0):
            result.flag("grid must be strictly increasing")
        if grid[0] < 0.0 or grid[-1] > 1.0:
            result.flag("grid must lie in [0, 1]")
        return result


def require_finite(values: np.ndarray, name: str = "input") -> np.ndarray:
    """Return ``values`` as a float64 array, raising ``NonFiniteInput`` on NaN/Inf."""
    arr = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput(f"{name} contains NaN or Inf")
    return arr


def require_matrix(values: np.ndarray, name: str = "matrix") -> np.ndarray:
    arr = require_finite(values, name)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    return arr


def require_vector(values: np.ndarray, length: Optional[int] = None, name: str = "vector") -> np.ndarray:
    arr = require_finite(values, name)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatch(f"{name} has length {arr.shape[0]}, expected {length}")
    return arr
