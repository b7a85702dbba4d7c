"""Run configuration for the command-line driver."""

from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .basis import RankSpec
from .reconstruction import NoiseMethod, PRule, SplitRule, SweepMethod
from .sensors import PlacementCriterion
from .sparse import SamplingMode


class Command(str, Enum):
    """CLI subcommand enumeration."""
    TRAIN = "train"
    PLACE = "place"
    RECONSTRUCT = "reconstruct"
    SWEEP_RANK = "sweep-rank"
    SWEEP_NOISE = "sweep-noise"
    CS_DEMO = "cs-demo"
    FEKETE = "fekete"
    EVAL = "eval"


class PlaceMethod(str, Enum):
    """Placement methods offered by ``place``."""
    QR = "qr"
    DEIM = "deim"
    RANDOM = "random"
    BRUTE = "brute"


class MatrixFormat(str, Enum):
    BINARY = "binary"
    CSV = "csv"

    @classmethod
    def for_path(cls, path: Path) -> "MatrixFormat":
        """CSV for ``.csv`` files, SSP1 binary otherwise."""
        return cls.CSV if Path(path).suffix.lower() == ".csv" else cls.BINARY


_REQUIRED = {
    Command.TRAIN: ("input", "out"),
    Command.PLACE: ("basis", "out"),
    Command.RECONSTRUCT: ("basis", "sensors", "measurements", "out"),
    Command.SWEEP_RANK: ("r_values", "out"),
    Command.SWEEP_NOISE: ("r", "etas", "out"),
    Command.CS_DEMO: (),
    Command.FEKETE: (),
    Command.EVAL: ("basis", "sensors"),
}


class RunConfig(BaseModel):
    """One CLI invocation: subcommand, file paths and numerical options."""

    command: Command = Field(..., description="subcommand")
    argv: List[str] = Field(default_factory=list, description="command line as given, for provenance")

    # Files
    input: Optional[Path] = Field(None, description="snapshot matrix")
    train: Optional[Path] = Field(None, description="training snapshots (sweeps)")
    test: Optional[Path] = Field(None, description="test snapshots (sweeps)")
    basis: Optional[Path] = Field(None, description="basis directory")
    sensors: Optional[Path] = Field(None, description="sensor set JSON")
    measurements: Optional[Path] = Field(None, description="p×k measurement matrix, one column per state")
    truth: Optional[Path] = Field(None, description="n×k true states for error reporting")
    out: Optional[Path] = Field(None, description="primary output")
    report: Optional[Path] = Field(None, description="run report JSON")
    format: Optional[MatrixFormat] = Field(None, description="matrix format, inferred from extension when unset")

    # Training
    rank: RankSpec = Field(default_factory=RankSpec.auto, description="fixed:N, energy:F or auto")
    mean_subtract: Optional[bool] = Field(None, description="subtract the temporal mean before the SVD; settings decide when unset")

    # Placement
    p: Optional[int] = Field(None, ge=1, description="number of sensors")
    method: PlaceMethod = Field(PlaceMethod.QR, description="placement method")
    criterion: Optional[str] = Field(None, description="d, a, e, cond, or all for eval")
    compare: bool = Field(False, description="eval: rank the sensor set against the exhaustive optimum")

    # Reconstruction and sweeps
    eta: float = Field(0.0, ge=0.0, description="sensor noise standard deviation")
    etas: List[float] = Field(default_factory=list, description="noise levels for sweep-noise")
    r: Optional[int] = Field(None, ge=1, description="basis rank for sweep-noise")
    r_values: List[int] = Field(default_factory=list, description="ranks for sweep-rank")
    sweep_method: SweepMethod = Field(SweepMethod.QR, description="method for sweep-rank")
    noise_methods: List[NoiseMethod] = Field(
        default_factory=lambda: list(NoiseMethod), description="methods for sweep-noise"
    )
    p_rule: PRule = Field(PRule.P_EQUALS_R, description="sensor count rule for sweep-rank")
    split: SplitRule = Field(default_factory=SplitRule, description="train/test split rule")
    seed: int = Field(0, description="master seed, recorded in every output")

    # Demos
    n: int = Field(4096, ge=1, description="three-tone grid size")
    cs_p: int = Field(256, ge=1, description="three-tone sample count")
    k_max: int = Field(6, ge=1, description="OMP sparsity cap")
    sampling: SamplingMode = Field(SamplingMode.RANDOM, description="three-tone sampling")
    degree: int = Field(30, ge=1, description="Fekete polynomial degree")
    grid: int = Field(1000, ge=2, description="Fekete grid size")

    no_timestamp: bool = Field(False, description="omit the report timestamp")

    model_config = ConfigDict(frozen=True, use_enum_values=False)

    @field_validator("rank", mode="before")
    @classmethod
    def _parse_rank(cls, v):
        return RankSpec.parse(v) if isinstance(v, str) else v

    @field_validator("split", mode="before")
    @classmethod
    def _parse_split(cls, v):
        return SplitRule.parse(v) if isinstance(v, str) else v

    @field_validator("criterion")
    @classmethod
    def _check_criterion(cls, v):
        if v is None or v == "all":
            return v
        PlacementCriterion.parse(v)
        return v

    @model_validator(mode="after")
    def _check_required(self):
        missing = [name for name in _REQUIRED[self.command] if not getattr(self, name)]
        if self.command in (Command.SWEEP_RANK, Command.SWEEP_NOISE):
            if not self.input and not (self.train and self.test):
                missing.append("input (or train and test)")
        if self.command == Command.PLACE and self.method != PlaceMethod.DEIM and self.p is None:
            missing.append("p")
        if missing:
            flags = ", ".join("--" + name.replace("_", "-") for name in missing)
            raise ValueError(f"{self.command.value} requires {flags}")
        return self

    def placement_criterion(self) -> PlacementCriterion:
        return PlacementCriterion.parse(self.criterion or "d")
