"""``train``: fit a POD basis to a snapshot matrix."""

import argparse
from pathlib import Path
from typing import Any, Dict, List

from sparsense.core.config import Settings
from sparsense.models.run import MatrixFormat, RunConfig
from sparsense.services import TrainingService
from .base_command import BaseCommand


def register_train_commands(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "train", parents=parents, help="fit a POD basis to a snapshot matrix"
    )
    parser.add_argument("--input", type=Path, help="n×m snapshot matrix (SSP1 or CSV)")
    parser.add_argument("--rank", help="fixed:N, energy:F or auto (default auto)")
    parser.add_argument(
        "--mean-subtract",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="subtract the temporal mean before the SVD",
    )
    parser.add_argument("--format", choices=[f.value for f in MatrixFormat], help="matrix format override")
    parser.add_argument("--out", type=Path, help="basis output directory")
    parser.set_defaults(handler=train_command)


def train_command(config: RunConfig, settings: Settings) -> Dict[str, Any]:
    service = TrainingService(settings)
    provenance = BaseCommand.provenance(config, settings)
    return BaseCommand.execute(
        config,
        settings,
        lambda: service.train(
            config.input,
            config.out,
            config.rank,
            mean_subtract=config.mean_subtract,
            fmt=config.format,
            provenance=provenance,
        ),
        report_path=config.report or config.out / "report.json",
        solver="thin SVD (LAPACK gesdd)",
    )
