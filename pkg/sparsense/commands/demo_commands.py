"""``cs-demo`` and ``fekete``: self-contained demonstrations."""

import argparse
from pathlib import Path
from typing import Any, Dict, List

from sparsense.core.config import Settings
from sparsense.models.run import RunConfig
from sparsense.models.sparse import SamplingMode
from sparsense.services import DemoService
from .base_command import BaseCommand


def register_demo_commands(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    cs = subparsers.add_parser("cs-demo", parents=parents, help="recover a three-tone signal by OMP")
    cs.add_argument("--n", type=int, help="samples in one second (default 4096)")
    cs.add_argument("--p", dest="cs_p", type=int, help="measurements (default 256)")
    cs.add_argument("--seed", type=int, help="seed for the random sample positions")
    cs.add_argument("--k-max", type=int, help="OMP sparsity cap (default 6)")
    cs.add_argument("--sampling", choices=[m.value for m in SamplingMode], help="random or equispaced")
    cs.add_argument("--out", type=Path, help="report path (stdout when omitted)")
    cs.set_defaults(handler=cs_demo_command)

    fekete = subparsers.add_parser("fekete", parents=parents, help="QR-pivot nodes against equispaced nodes")
    fekete.add_argument("--degree", type=int, help="polynomial degree (default 30)")
    fekete.add_argument("--grid", type=int, help="grid points on [0, 1] (default 1000)")
    fekete.add_argument("--out", type=Path, help="report path (stdout when omitted)")
    fekete.set_defaults(handler=fekete_command)


def cs_demo_command(config: RunConfig, settings: Settings) -> Dict[str, Any]:
    service = DemoService(settings)
    return BaseCommand.execute(
        config,
        settings,
        lambda: service.three_tone(
            n=config.n, p=config.cs_p, seed=config.seed, k_max=config.k_max, sampling=config.sampling
        ),
        report_path=config.out or config.report,
        solver="orthogonal matching pursuit in the DCT-II basis",
    )


def fekete_command(config: RunConfig, settings: Settings) -> Dict[str, Any]:
    service = DemoService(settings)
    return BaseCommand.execute(
        config,
        settings,
        lambda: service.fekete(degree=config.degree, grid=config.grid),
        report_path=config.out or config.report,
        solver="QR pivoting on the monomial Vandermonde matrix; barycentric evaluation",
    )
