"""Benchmark service: rank and noise sweeps written as CSV tables."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from pydantic import BaseModel, Field

from sparsense.core.config import Settings, settings as default_settings
from sparsense.core.errors import InputError, SparsenseError
from sparsense.core.response import ServiceResponse
from sparsense.models.reconstruction import NoiseMethod, PRule, SplitRule, SweepMethod
from sparsense.models.run import MatrixFormat
from sparsense.models.snapshot import SnapshotMatrix
from sparsense.numerics.sweeps import split_snapshots, sweep_noise, sweep_rank
from sparsense.storage import load_matrix, write_table_csv

logger = logging.getLogger(__name__)

RANK_COLUMNS = ("r", "p", "mean_rel_error", "std_rel_error")
NOISE_COLUMNS = ("method", "eta", "mean_rel_error", "kappa")


class SweepInputs(BaseModel):
    """Where sweep snapshots come from: one matrix to split, or explicit train and test files."""

    input: Optional[Path] = Field(None, description="snapshot matrix split by ``split``")
    train: Optional[Path] = Field(None, description="training snapshots")
    test: Optional[Path] = Field(None, description="test snapshots")
    split: SplitRule = Field(default_factory=SplitRule)
    format: Optional[MatrixFormat] = None


class BenchmarkService:
    """Runs the reconstruction sweeps over snapshot files."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings if settings is not None else default_settings

    def load_split(self, inputs: SweepInputs) -> Tuple[SnapshotMatrix, SnapshotMatrix]:
        """Explicit train/test files win; otherwise ``inputs.input`` is split."""
        if inputs.train is not None and inputs.test is not None:
            return load_matrix(inputs.train, inputs.format), load_matrix(inputs.test, inputs.format)
        if inputs.input is None:
            raise InputError("sweeps need an input matrix or both train and test matrices")
        return split_snapshots(load_matrix(inputs.input, inputs.format), inputs.split)

    @staticmethod
    def split_label(inputs: SweepInputs) -> Optional[str]:
        return None if inputs.train is not None and inputs.test is not None else str(inputs.split)

    def sweep_rank(
        self,
        inputs: SweepInputs,
        out: Path,
        method: SweepMethod,
        r_values: Sequence[int],
        p_rule: PRule = PRule.P_EQUALS_R,
        seed: int = 0,
        mean_subtract: Optional[bool] = None,
    ) -> ServiceResponse[Dict[str, Any]]:
        try:
            if mean_subtract is None:
                mean_subtract = self.settings.DEFAULT_MEAN_SUBTRACT
            train, test = self.load_split(inputs)
            rows = sweep_rank(train, test, method, r_values, p_rule, seed, mean_subtract, settings=self.settings)
            write_table_csv(rows, RANK_COLUMNS, out)
            data = {
                "method": method,
                "p_rule": p_rule,
                "train_snapshots": train.cols,
                "test_snapshots": test.cols,
                "split": self.split_label(inputs),
                "rows": rows,
                "out": str(out),
            }
            return ServiceResponse.success_response(data, f"Swept {len(rows)} ranks")

        except SparsenseError as e:
            logger.debug(f"sweep-rank failed: {e.label}: {e}")
            return ServiceResponse.from_exception(e)
        except np.linalg.LinAlgError as e:
            return ServiceResponse.error_response(f"sweep-rank: LAPACK failure: {e}", code=3, label="LinAlgError")

    def sweep_noise(
        self,
        inputs: SweepInputs,
        out: Path,
        methods: Sequence[NoiseMethod],
        eta_values: Sequence[float],
        r: int,
        seed: int = 0,
        mean_subtract: Optional[bool] = None,
    ) -> ServiceResponse[Dict[str, Any]]:
        try:
            if mean_subtract is None:
                mean_subtract = self.settings.DEFAULT_MEAN_SUBTRACT
            train, test = self.load_split(inputs)
            result = sweep_noise(
                train,
                test,
                methods,
                eta_values,
                r,
                seed=seed,
                mean_subtract=mean_subtract,
                tolerance=self.settings.MONOTONE_TOLERANCE,
                settings=self.settings,
            )
            write_table_csv(result.rows, NOISE_COLUMNS, out)
            violations: List[str] = [name for name, ok in result.monotone.items() if not ok]
            data = {
                "r": result.r,
                "train_snapshots": train.cols,
                "test_snapshots": test.cols,
                "split": self.split_label(inputs),
                "rows": result.rows,
                "monotone": result.monotone,
                "out": str(out),
            }
            message = "Noise sweep finished"
            if violations:
                message += f"; error not monotone in eta for {', '.join(violations)}"
            return ServiceResponse.success_response(data, message)

        except SparsenseError as e:
            logger.debug(f"sweep-noise failed: {e.label}: {e}")
            return ServiceResponse.from_exception(e)
        except np.linalg.LinAlgError as e:
            return ServiceResponse.error_response(f"sweep-noise: LAPACK failure: {e}", code=3, label="LinAlgError")
