"""Application configuration."""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical guards, defaults and format versions.

    Populated from keyword arguments only (the ``"settings"`` object of a
    ``--config`` file); the environment is never consulted.
    """

    # App settings
    APP_NAME: str = "sparsense"
    VERSION: str = "0.1.0"
    LOG_LEVEL: str = "WARNING"

    # Placement guards
    BRUTE_FORCE_LIMIT: int = 1_000_000
    BRUTE_FORCE_BATCH: int = 4096
    OVERSAMPLE_MAX_N: int = 20_000

    # Training
    DEFAULT_MEAN_SUBTRACT: bool = True

    # Randomness
    RANDOM_GENERATOR: str = "numpy.PCG64"

    # Sweeps
    MONOTONE_TOLERANCE: float = 0.05

    # Formats
    MATRIX_FORMAT: str = "SSP1"
    SENSORS_FORMAT: str = "sparsense.sensors/1"
    BASIS_FORMAT: str = "sparsense.basis/1"
    REPORT_FORMAT: str = "sparsense.report/1"

    model_config = SettingsConfigDict(extra="ignore", frozen=True)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    def format_versions(self) -> Dict[str, str]:
        """Format identifiers embedded in every report's provenance."""
        return {
            "matrix": self.MATRIX_FORMAT,
            "sensors": self.SENSORS_FORMAT,
            "basis": self.BASIS_FORMAT,
            "report": self.REPORT_FORMAT,
        }

    def digest(self) -> str:
        """Short SHA-256 of the effective settings, stable across runs."""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def read_config_file(path: Optional[Path]) -> Dict[str, Any]:
    """Read a ``--config`` JSON file; a missing path yields an empty config."""
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must contain a JSON object")
    return data


def load_settings(config: Optional[Dict[str, Any]] = None) -> Settings:
    """Build settings from the ``"settings"`` section of a parsed config file."""
    overrides = (config or {}).get("settings", {})
    return Settings(**overrides)


settings = Settings()
