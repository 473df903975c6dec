"""Common utilities - logging, config, exceptions."""

from tabimage.common.logging.logger import configure_logging, get_logger
from tabimage.common.config import Settings, get_settings, reset_settings
from tabimage.common.exceptions import (
    TabImageError,
    ConfigurationError,
    ValidationError,
    ParseError,
    SchemaError,
    DatasetIOError,
    ManifestError,
    ProbeError,
)

__all__ = [
    # Logging
    "configure_logging",
    "get_logger",
    # Config
    "Settings",
    "get_settings",
    "reset_settings",
    # Exceptions
    "TabImageError",
    "ConfigurationError",
    "ValidationError",
    "ParseError",
    "SchemaError",
    "DatasetIOError",
    "ManifestError",
    "ProbeError",
]
