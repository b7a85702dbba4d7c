"""Shared plumbing for CLI command handlers."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, TypeVar

from sparsense.core.config import Settings
from sparsense.core.response import ServiceResponse
from sparsense.models.run import RunConfig
from sparsense.storage import dumps, write_report_json
from .report_format import ERROR_METRIC, ReportFailure, RunReport

logger = logging.getLogger(__name__)

T = TypeVar('T')


class CommandFailed(Exception):
    """A service call failed; carries the process exit status."""

    def __init__(self, exit_code: int, message: str, label: Optional[str] = None):
        super().__init__(message)
        self.exit_code = exit_code
        self.message = message
        self.label = label or "Error"


def handle_service_response(response: ServiceResponse[T]) -> T:
    """Return the payload of a successful response or raise ``CommandFailed``."""
    if response.success:
        return response.data
    code = response.code if response.code else 3
    raise CommandFailed(code, response.error or "Unknown error occurred", response.error_label)


def list_of(item_type: Callable[[str], Any]) -> Callable[[str], list]:
    """argparse type for comma-separated lists, e.g. ``--r-values 5,10,20``."""

    def parse(text: str) -> list:
        try:
            return [item_type(part) for part in text.split(",") if part.strip()]
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"invalid list {text!r}: {e}") from e

    parse.__name__ = f"{getattr(item_type, '__name__', 'value')} list"
    return parse


class BaseCommand:
    """Helpers shared by every command handler."""

    @staticmethod
    def provenance(config: RunConfig, settings: Settings, **extra: Any) -> Dict[str, Any]:
        """Command line, seed and format versions recorded with every output."""
        block: Dict[str, Any] = {
            "argv": list(config.argv),
            "command": config.command.value,
            "seed": config.seed,
            "version": settings.VERSION,
            "formats": settings.format_versions(),
            "settings_digest": settings.digest(),
            "error_metric": ERROR_METRIC,
        }
        block.update(extra)
        return block

    @staticmethod
    def emit(report: Dict[str, Any], path: Optional[Path]) -> None:
        """Write the report to ``path``, or to stdout when no path is set."""
        if path is None:
            sys.stdout.write(dumps(report))
            return
        write_report_json(report, path)
        logger.info(f"wrote report {path}")

    @staticmethod
    def execute(
        config: RunConfig,
        settings: Settings,
        call: Callable[[], ServiceResponse[Any]],
        report_path: Optional[Path] = None,
        **extra: Any,
    ) -> Dict[str, Any]:
        """Run one service call and emit its report.

        On failure the error report is written only when ``--report`` was
        given; the ``CommandFailed`` is re-raised for the driver.
        """
        operation = config.command.value
        metadata = BaseCommand.provenance(config, settings, **extra)
        stamped = not config.no_timestamp
        response = call()
        try:
            data = handle_service_response(response)
        except CommandFailed as e:
            if config.report is not None:
                failure = ReportFailure(message=e.message, code=e.label, exit_status=e.exit_code)
                report = RunReport.failed(operation, failure, metadata, stamped=stamped)
                write_report_json(report.as_document(), config.report)
            raise
        document = RunReport.completed(operation, data, metadata, response.message, stamped=stamped).as_document()
        BaseCommand.emit(document, report_path)
        return document

    @staticmethod
    def sibling_report(out: Path) -> Path:
        """``rank.csv`` -> ``rank.report.json``."""
        return out.with_suffix(".report.json")
