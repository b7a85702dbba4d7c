"""Sensor set and placement criterion models."""

from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from sparsense.core.validators import InputCheck, SensorValidator


class SensorMethod(str, Enum):
    """Sensor placement method enumeration."""
    QR = "qr"
    QR_OVERSAMPLED = "qr_oversampled"
    DEIM = "deim"
    RANDOM = "random"
    BRUTE_FORCE = "brute_force"


class CriterionKind(str, Enum):
    """Experiment-design objective enumeration."""
    D_OPTIMAL = "d_optimal"
    A_OPTIMAL = "a_optimal"
    E_OPTIMAL = "e_optimal"
    CONDITION = "condition"


_CRITERION_ALIASES = {
    "d": CriterionKind.D_OPTIMAL,
    "a": CriterionKind.A_OPTIMAL,
    "e": CriterionKind.E_OPTIMAL,
    "cond": CriterionKind.CONDITION,
}


class PlacementCriterion(BaseModel):
    """Objective over Θ = CΨ_r and its information matrix M = ΘᵀΘ."""

    kind: CriterionKind = Field(CriterionKind.D_OPTIMAL, description="objective kind")

    model_config = {"frozen": True}

    @classmethod
    def parse(cls, text: str) -> "PlacementCriterion":
        """Accept the CLI short forms (d, a, e, cond) or the full enum values."""
        key = text.strip().lower()
        if key in _CRITERION_ALIASES:
            return cls(kind=_CRITERION_ALIASES[key])
        return cls(kind=CriterionKind(key))

    @property
    def maximize(self) -> bool:
        """The condition number is minimized; all other objectives are maximized."""
        return self.kind != CriterionKind.CONDITION

    @property
    def requires_full_rank(self) -> bool:
        return self.kind in (CriterionKind.D_OPTIMAL, CriterionKind.E_OPTIMAL)


class SensorSetRecord(BaseModel):
    """Ordered, distinct, 1-based sensor indices with provenance.

    Construction does not enforce the index invariants so that invalid records
    can reach the storage layer and be rejected with a precise error there;
    call ``check()`` to validate.
    """

    indices: List[int] = Field(..., description="1-based sensor indices, selection order")
    n: int = Field(..., description="state dimension")
    method: SensorMethod = Field(..., description="placement method")
    r: int = Field(..., ge=0, description="basis rank used for placement")
    seed: Optional[int] = Field(None, description="seed for randomized methods")
    generator: Optional[str] = Field(None, description="random generator algorithm")
    criterion: Optional[CriterionKind] = Field(None, description="objective for brute-force placement")

    model_config = {"frozen": True}

    @property
    def p(self) -> int:
        return len(self.indices)

    @property
    def positions(self) -> np.ndarray:
        """0-based row positions into the state vector."""
        return np.asarray(self.indices, dtype=np.int64) - 1

    def check(self) -> InputCheck:
        return SensorValidator.validate_indices(self.indices, self.n)

    def measurement_matrix(self) -> np.ndarray:
        """Explicit p×n selection matrix C with rows e_{γ_i}ᵀ."""
        c = np.zeros((self.p, self.n))
        c[np.arange(self.p), self.positions] = 1.0
        return c

    def is_prefix_of(self, other: "SensorSetRecord") -> bool:
        return other.indices[: self.p] == self.indices
