"""Command-line entry point.

Usage: ``sparsense <command> --key value ...``. A ``--config`` JSON file may
supply per-flag ``"defaults"`` (the command line wins) and ``"settings"``
overrides for the numerical guards.
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from sparsense import __version__
from sparsense.commands import (
    CommandFailed,
    register_benchmark_commands,
    register_demo_commands,
    register_placement_commands,
    register_reconstruct_commands,
    register_train_commands,
)
from sparsense.core.config import Settings, load_settings, read_config_file
from sparsense.core.errors import ConfigError, SchemaViolation, SparsenseError, UnknownCommand
from sparsense.core.events import configure_logging, run_finished, run_started
from sparsense.models.run import RunConfig
from sparsense.storage.schemas import CONFIG_SCHEMA, check_document

_NOT_OPTIONS = ("command", "argv")


class ArgumentParser(argparse.ArgumentParser):
    """Raises instead of printing usage and exiting, so ``run`` owns the exit status."""

    def error(self, message: str):
        if message.startswith("argument command"):
            raise UnknownCommand(message)
        raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file with \"defaults\" and \"settings\" objects")
    common.add_argument("--report", type=Path, help="run report JSON path")
    common.add_argument(
        "--no-timestamp", action="store_true", default=None, help="write a null timestamp for byte-stable output"
    )
    common.add_argument("--verbose", action="store_true", help="log progress at INFO")

    parser = ArgumentParser(prog="sparsense", description="Sparse sensor placement and reconstruction")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    parents = [common]
    # training and placement
    register_train_commands(subparsers, parents)
    register_placement_commands(subparsers, parents)
    # reconstruction and benchmarks
    register_reconstruct_commands(subparsers, parents)
    register_benchmark_commands(subparsers, parents)
    # demos
    register_demo_commands(subparsers, parents)
    return parser


def load_config(path: Optional[Path]) -> Dict[str, Any]:
    """Read and schema-check a ``--config`` file; every failure is a configuration error."""
    try:
        config = read_config_file(path)
        check_document(config, CONFIG_SCHEMA, str(path))
    except (OSError, ValueError, SchemaViolation) as e:
        raise ConfigError(f"cannot use config file {path}: {e}") from e
    return config


def build_run_config(args: argparse.Namespace, argv: Sequence[str], config: Dict[str, Any]) -> RunConfig:
    """Merge config-file defaults under the parsed flags and validate the result."""
    known = set(RunConfig.model_fields) - set(_NOT_OPTIONS)
    defaults = {key.replace("-", "_"): value for key, value in config.get("defaults", {}).items()}
    unknown = sorted(set(defaults) - known)
    if unknown:
        raise ConfigError(f"unknown keys in config defaults: {', '.join(unknown)}")

    given = {key: value for key, value in vars(args).items() if key in known and value is not None}
    return RunConfig(command=args.command, argv=list(argv), **{**defaults, **given})


def _one_line(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(part) for part in item["loc"])
        message = item["msg"].removeprefix("Value error, ")
        parts.append(f"{where}: {message}" if where else message)
    return "; ".join(parts)


def _diagnose(label: str, message: str) -> None:
    text = " ".join(str(message).split())
    sys.stderr.write(f"sparsense: error: {label}: {text}\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit status.

    0 on success, 1 for unreadable or malformed files, 2 for invalid
    arguments or configuration, 3 for numerical failures.
    """
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)
    command = argv[0] if argv else "?"
    status = 0
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        config_file = load_config(args.config)
        try:
            settings: Settings = load_settings(config_file)
        except ValidationError as e:
            raise ConfigError(f"invalid settings: {_one_line(e)}") from e
        configure_logging("INFO" if args.verbose else settings.LOG_LEVEL)
        config = build_run_config(args, argv, config_file)
        run_started(command, config.model_dump(exclude_none=True, exclude={"argv"}), settings)
        args.handler(config, settings)
    except CommandFailed as e:
        status = e.exit_code
        _diagnose(e.label, e.message)
    except SparsenseError as e:
        status = e.exit_code
        _diagnose(e.label, str(e))
    except ValidationError as e:
        status = 2
        _diagnose("ValidationError", _one_line(e))
    except SystemExit as e:
        # --help and --version
        status = e.code if isinstance(e.code, int) else 0
    run_finished(command, status)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
