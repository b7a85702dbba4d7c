"""``sweep-rank`` and ``sweep-noise``: reconstruction benchmarks as CSV tables."""

import argparse
from pathlib import Path
from typing import Any, Dict, List

from sparsense.core.config import Settings
from sparsense.models.reconstruction import NoiseMethod, PRule, SweepMethod
from sparsense.models.run import MatrixFormat, RunConfig
from sparsense.services import BenchmarkService, SweepInputs
from .base_command import BaseCommand, list_of


def _add_snapshot_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", type=Path, help="snapshot matrix to split into train and test")
    parser.add_argument("--train", type=Path, help="training snapshots (with --test, replaces --input)")
    parser.add_argument("--test", type=Path, help="test snapshots")
    parser.add_argument("--split", help="chrono[:F], interleave:K or random:SEED[:F] (default interleave:5)")
    parser.add_argument(
        "--mean-subtract",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="subtract the training mean before the SVD",
    )
    parser.add_argument("--seed", type=int, help="seed for random placement, splits and noise")
    parser.add_argument("--format", choices=[f.value for f in MatrixFormat], help="matrix format override")
    parser.add_argument("--out", type=Path, help="CSV table")


def register_benchmark_commands(subparsers, parents: List[argparse.ArgumentParser]) -> None:
    rank = subparsers.add_parser("sweep-rank", parents=parents, help="reconstruction error against basis rank")
    _add_snapshot_arguments(rank)
    rank.add_argument("--r-values", type=list_of(int), help="comma-separated ranks, e.g. 5,10,20")
    rank.add_argument(
        "--method", dest="sweep_method", choices=[m.value for m in SweepMethod], help="method (default qr)"
    )
    rank.add_argument("--p-rule", choices=[rule.value for rule in PRule], help="sensor count per rank")
    rank.set_defaults(handler=sweep_rank_command)

    noise = subparsers.add_parser("sweep-noise", parents=parents, help="reconstruction error against sensor noise")
    _add_snapshot_arguments(noise)
    noise.add_argument("--r", type=int, help="basis rank")
    noise.add_argument("--etas", type=list_of(float), help="comma-separated noise levels, e.g. 0,0.01,0.1")
    noise.add_argument(
        "--methods",
        dest="noise_methods",
        type=list_of(NoiseMethod),
        help=f"comma-separated subset of {','.join(m.value for m in NoiseMethod)} (default all)",
    )
    noise.set_defaults(handler=sweep_noise_command)


def _inputs(config: RunConfig) -> SweepInputs:
    return SweepInputs(
        input=config.input,
        train=config.train,
        test=config.test,
        split=config.split,
        format=config.format,
    )


def sweep_rank_command(config: RunConfig, settings: Settings) -> Dict[str, Any]:
    service = BenchmarkService(settings)
    return BaseCommand.execute(
        config,
        settings,
        lambda: service.sweep_rank(
            _inputs(config),
            config.out,
            config.sweep_method,
            config.r_values,
            p_rule=config.p_rule,
            seed=config.seed,
            mean_subtract=config.mean_subtract,
        ),
        report_path=config.report or BaseCommand.sibling_report(config.out),
        solver="least squares (LAPACK gelsd)",
    )


def sweep_noise_command(config: RunConfig, settings: Settings) -> Dict[str, Any]:
    service = BenchmarkService(settings)
    return BaseCommand.execute(
        config,
        settings,
        lambda: service.sweep_noise(
            _inputs(config),
            config.out,
            config.noise_methods,
            config.etas,
            config.r,
            seed=config.seed,
            mean_subtract=config.mean_subtract,
        ),
        report_path=config.report or BaseCommand.sibling_report(config.out),
        solver="least squares (LAPACK gelsd)",
    )
