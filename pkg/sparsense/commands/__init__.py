"""CLI command registration."""

from .base_command import BaseCommand, CommandFailed, handle_service_response
from .benchmark_commands import register_benchmark_commands
from .demo_commands import register_demo_commands
from .placement_commands import register_placement_commands
from .reconstruct_commands import register_reconstruct_commands
from .report_format import RunReport
from .train_commands import register_train_commands

__all__ = [
    "BaseCommand",
    "CommandFailed",
    "RunReport",
    "handle_service_response",
    "register_train_commands",
    "register_placement_commands",
    "register_reconstruct_commands",
    "register_benchmark_commands",
    "register_demo_commands",
]
