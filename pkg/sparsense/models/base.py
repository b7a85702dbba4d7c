"""Base models and common array types."""

from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict


def as_float_array(value: Any, ndim: Optional[int] = None) -> np.ndarray:
    """Coerce to a read-only float64 array, optionally checking dimensionality."""
    arr = np.array(value, dtype=np.float64, copy=True)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-D array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def as_index_array(value: Any) -> np.ndarray:
    arr = np.array(value, dtype=np.int64, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


def array_to_list(value: Optional[np.ndarray]) -> Optional[list]:
    """JSON-friendly copy of an array (floats keep their repr round-trip)."""
    if value is None:
        return None
    return np.asarray(value).tolist()


class ArrayModel(BaseModel):
    """Immutable model holding numpy arrays."""

    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        frozen=True,
    )
