"""Configuration subpackage for tabimage."""

from tabimage.common.config.settings import (
    LogLevel,
    Settings,
    get_settings,
    reset_settings,
)

__all__ = [
    "LogLevel",
    "Settings",
    "get_settings",
    "reset_settings",
]
