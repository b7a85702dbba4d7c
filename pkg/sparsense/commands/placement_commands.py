"""``place`` and ``eval``: choose sensors and score sensor sets."""

import argparse
from pathlib import Path
from typing import Any, Dict, List

from sparsense.core.config import Settings
from sparsense.models.run import PlaceMethod, RunConfig
from sparsense.models.sensors import PlacementCriterion
from sparsense.services import PlacementService
from .base_command import BaseCommand

_CRITERIA = ["d", "a", "e", "cond"]

_SOLVERS = {
    PlaceMethod.QR: "Householder QR with column pivoting",
    PlaceMethod.DEIM: "greedy interpolation residual",
    PlaceMethod.RANDOM: "uniform draw without replacement",
    PlaceMethod.BRUTE: "exhaustive subset search",
}


def register_placement_commands(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    place = subparsers.add_parser("place", parents=parents, help="place point sensors for a basis")
    place.add_argument("--basis", type=Path, help="basis directory written by train")
    place.add_argument("--p", type=int, help="number of sensors (DEIM places exactly r)")
    place.add_argument("--method", choices=[m.value for m in PlaceMethod], help="placement method (default qr)")
    place.add_argument("--criterion", choices=_CRITERIA, help="objective for brute-force placement (default d)")
    place.add_argument("--seed", type=int, help="seed for random placement")
    place.add_argument("--out", type=Path, help="sensor record JSON")
    place.set_defaults(handler=place_command)

    evaluate = subparsers.add_parser("eval", parents=parents, help="score a sensor set against a basis")
    evaluate.add_argument("--basis", type=Path, help="basis directory")
    evaluate.add_argument("--sensors", type=Path, help="sensor record JSON")
    evaluate.add_argument("--criterion", choices=_CRITERIA + ["all"], help="criterion to report (default all)")
    evaluate.add_argument(
        "--compare", action="store_true", default=None, help="also compare with the exhaustive optimum"
    )
    evaluate.add_argument("--out", type=Path, help="report path (stdout when omitted)")
    evaluate.set_defaults(handler=eval_command)


def place_command(config: RunConfig, settings: Settings) -> Dict[str, Any]:
    service = PlacementService(settings)
    provenance = BaseCommand.provenance(config, settings, solver=_SOLVERS[config.method])
    return BaseCommand.execute(
        config,
        settings,
        lambda: service.place(
            config.basis,
            config.out,
            config.method,
            config.p,
            config.placement_criterion(),
            seed=config.seed,
            provenance=provenance,
        ),
        report_path=config.report,
        solver=_SOLVERS[config.method],
    )


def eval_command(config: RunConfig, settings: Settings) -> Dict[str, Any]:
    service = PlacementService(settings)
    criterion = None if config.criterion in (None, "all") else PlacementCriterion.parse(config.criterion)
    return BaseCommand.execute(
        config,
        settings,
        lambda: service.evaluate(config.basis, config.sensors, criterion, compare=config.compare),
        report_path=config.out or config.report,
    )
