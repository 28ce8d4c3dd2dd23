"""
File: settings.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from functools import lru_cache
from pathlib import Path
from typing import Annotated, Literal

from fastapi import Depends
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Simulator configuration.
    Loads MIRRORSIM_* variables from the environment and .env.
    Immutable and thread-safe.
    """

    # Application
    APP_NAME: str = "mirrorsim"
    APP_VERSION: str = "0.1.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"  # DEBUG, INFO, WARNING, ERROR, CRITICAL
    LOG_FORMAT: Literal["text", "json"] = "text"

    # HTTP service
    HOST: str = "localhost"
    PORT: int = 8000
    WORKERS: int = 1

    # Batch runs
    OUT_DIR: Path = Path("out")
    THREADS: int = Field(default=1, ge=1)
    STRICT: bool = False

    # Numerical diagnostics
    WRAP_GUARD_CELLS: int = Field(default=8, ge=0)
    BAND_EDGE_FRACTION: float = Field(default=0.8, gt=0.0, lt=1.0)
    BAND_EDGE_TOLERANCE: float = Field(default=1e-6, ge=0.0)
    SUPPORT_THRESHOLD: float = Field(default=1e-13, gt=0.0, lt=1.0)

    model_config = SettingsConfigDict(
        env_prefix="MIRRORSIM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        frozen=True,  # Makes settings immutable
        extra="ignore",  # Ignore extra variables in .env
    )


@lru_cache
def get_settings() -> Settings:
    """
    Returns singleton instance of Settings.
    Thread-safe due to lru_cache.
    Loads .env only once.

    Returns:
        Settings: Single configuration instance.
    """
    return Settings()


# Global instance for direct imports (startup, initial config)
settings = get_settings()

# Type alias for dependency injection (routers, services, tests)
SettingsDep = Annotated[Settings, Depends(get_settings)]
