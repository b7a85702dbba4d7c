"""``reconstruct``: full states from point measurements."""

import argparse
from pathlib import Path
from typing import Any, Dict, List

from sparsense.core.config import Settings
from sparsense.models.run import MatrixFormat, RunConfig
from sparsense.services import ReconstructionService
from .base_command import BaseCommand


def register_reconstruct_commands(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "reconstruct", parents=parents, help="reconstruct states from sensor measurements"
    )
    parser.add_argument("--basis", type=Path, help="basis directory")
    parser.add_argument("--sensors", type=Path, help="sensor record JSON")
    parser.add_argument("--measurements", type=Path, help="p×k measurements, one column per state")
    parser.add_argument("--truth", type=Path, help="n×k true states for error reporting")
    parser.add_argument("--eta", type=float, help="standard deviation of added sensor noise")
    parser.add_argument("--seed", type=int, help="noise seed")
    parser.add_argument("--format", choices=[f.value for f in MatrixFormat], help="matrix format override")
    parser.add_argument("--out", type=Path, help="n×k reconstructed states")
    parser.set_defaults(handler=reconstruct_command)


def reconstruct_command(config: RunConfig, settings: Settings) -> Dict[str, Any]:
    service = ReconstructionService(settings)
    return BaseCommand.execute(
        config,
        settings,
        lambda: service.reconstruct(
            config.basis,
            config.sensors,
            config.measurements,
            config.out,
            truth_path=config.truth,
            eta=config.eta,
            seed=config.seed,
            fmt=config.format,
        ),
        report_path=config.report or BaseCommand.sibling_report(config.out),
        solver="least squares (LAPACK gelsd)",
    )
