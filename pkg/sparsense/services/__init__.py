"""Service layer: numerics plus storage behind ``ServiceResponse`` results."""

from .benchmark_service import BenchmarkService, SweepInputs
from .demo_service import DemoService
from .placement_service import PlacementService
from .reconstruction_service import ReconstructionService
from .training_service import TrainingService

__all__ = [
    "TrainingService",
    "PlacementService",
    "ReconstructionService",
    "BenchmarkService",
    "SweepInputs",
    "DemoService",
]
