"""Run start and finish events."""

import logging
import sys
from typing import Any, Dict

from sparsense.core.config import Settings

logger = logging.getLogger(__name__)

_HANDLER_NAME = "sparsense-stderr"


def configure_logging(level: str = "WARNING") -> None:
    """Install a single stderr handler on the package logger."""
    root = logging.getLogger("sparsense")
    root.setLevel(level.upper())
    for existing in root.handlers:
        if existing.get_name() == _HANDLER_NAME:
            existing.setStream(sys.stderr)
            return
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    root.addHandler(handler)


def run_started(command: str, options: Dict[str, Any], settings: Settings) -> None:
    logger.info(f"Starting {settings.APP_NAME} {settings.VERSION} command '{command}'")
    for key in sorted(options):
        logger.info(f"  {key} = {options[key]!r}")


def run_finished(command: str, status: int) -> None:
    if status == 0:
        logger.info(f"Command '{command}' finished")
    else:
        logger.info(f"Command '{command}' failed with exit status {status}")
