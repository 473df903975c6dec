"""Configuration management - process-wide settings for tabimage.

All settings are loaded from environment variables with fallbacks;
a `.env` file in the working directory is honoured by the CLI.
"""

import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional

from tabimage.common.exceptions import ConfigurationError


class LogLevel(str, Enum):
    """Logging levels."""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


@dataclass
class Settings:
    """Central settings object for tabimage.

    All settings can be overridden via environment variables prefixed with TABIMAGE_.

    Example:
        TABIMAGE_OUTPUT_ROOT=/data/bar-images
        TABIMAGE_LOG_LEVEL=DEBUG
        TABIMAGE_WORKERS=8
    """

    log_level: LogLevel = field(
        default_factory=lambda: LogLevel(os.getenv("TABIMAGE_LOG_LEVEL", "INFO").upper())
    )

    # Default root for dataset trees when --out is not given
    output_root: Path = field(
        default_factory=lambda: Path(os.getenv("TABIMAGE_OUTPUT_ROOT", "./datasets"))
    )
    workers: int = field(
        default_factory=lambda: int(os.getenv("TABIMAGE_WORKERS", "1"))
    )

    def __post_init__(self):
        """Validate settings after initialization."""
        if self.workers < 1:
            raise ConfigurationError("TABIMAGE_WORKERS must be at least 1")


# Singleton instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance.

    Returns:
        Settings: The global settings singleton.
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Reset the global settings (for testing)."""
    global _settings
    _settings = None
