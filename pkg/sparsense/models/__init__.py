"""Data models for sparse sensing."""

from .basis import BasisSource, RankKind, RankSpec, TailoredBasis
from .factor import PivotedQrFactor, SvdFactor
from .reconstruction import (
    CompareToOptimum,
    CovarianceReport,
    NoiseMethod,
    NoiseModel,
    NoiseSweepResult,
    NoiseSweepRow,
    PRule,
    ReconstructionResult,
    SplitKind,
    SplitRule,
    SweepMethod,
    SweepRow,
)
from .run import Command, MatrixFormat, PlaceMethod, RunConfig
from .sensors import CriterionKind, PlacementCriterion, SensorMethod, SensorSetRecord
from .snapshot import SnapshotMatrix
from .sparse import FeketeReport, SamplingMode, SparseSolution, ThreeToneReport, UniversalBasisSpec, UniversalKind

__all__ = [
    "SnapshotMatrix",
    "SensorSetRecord",
    "SensorMethod",
    "PlacementCriterion",
    "CriterionKind",
    "PivotedQrFactor",
    "SvdFactor",
    "TailoredBasis",
    "BasisSource",
    "RankSpec",
    "RankKind",
    "ReconstructionResult",
    "NoiseModel",
    "CovarianceReport",
    "SweepMethod",
    "NoiseMethod",
    "PRule",
    "SweepRow",
    "NoiseSweepRow",
    "NoiseSweepResult",
    "SplitKind",
    "SplitRule",
    "CompareToOptimum",
    "SparseSolution",
    "UniversalBasisSpec",
    "UniversalKind",
    "SamplingMode",
    "ThreeToneReport",
    "FeketeReport",
    "RunConfig",
    "Command",
    "PlaceMethod",
    "MatrixFormat",
]
