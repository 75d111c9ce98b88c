"""
Configuration Module

Loads enumeration caps and defaults from the environment (and a local .env
file) so that every exhaustive step in the toolkit has an explicit bound.
"""
import os
from typing import Mapping, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

from .errors import ConfigurationError


ENV_PREFIX = "WIRING_"


class Settings(BaseModel):
    """Caps for the exact (exhaustive) parts of the toolkit."""

    model_config = ConfigDict(frozen=True)

    oracle_max_completions: int = Field(default=2**24, gt=0)
    oracle_max_grid: int = Field(default=4096, gt=0)
    oracle_max_cells: int = Field(default=2**28, gt=0)
    max_type_points: int = Field(default=8, gt=0)
    enumeration_cap: int = Field(default=8, gt=0)
    design_max_grid: int = Field(default=2**20, gt=0)
    baseline_max_choices: int = Field(default=10**7, gt=0)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Build settings from environment variables.

        Args:
            environ: Mapping to read instead of os.environ (the .env file is
                only consulted when this is None)

        Returns:
            Settings: validated settings

        Raises:
            ConfigurationError: if a variable is not a positive integer
        """
        if environ is None:
            load_dotenv()
            environ = os.environ

        values = {}
        for name, field in cls.model_fields.items():
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is None or raw == "":
                continue
            if field.annotation is int:
                try:
                    parsed = int(raw)
                except ValueError:
                    raise ConfigurationError(f"{ENV_PREFIX + name.upper()} must be an integer, got {raw!r}")
                if parsed <= 0:
                    raise ConfigurationError(f"{ENV_PREFIX + name.upper()} must be positive, got {parsed}")
                values[name] = parsed
            else:
                values[name] = raw.upper()
        return cls(**values)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Return the process-wide settings, loading them on first use."""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings
