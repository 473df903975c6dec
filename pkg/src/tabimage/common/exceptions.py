"""Custom exceptions for tabimage.

Provides a hierarchy of exceptions for different error types.
All tabimage exceptions inherit from TabImageError.
"""

from pathlib import Path
from typing import Any, Dict, Optional, Union


class TabImageError(Exception):
    """Base exception for all tabimage errors.

    Attributes:
        message: Human-readable error message
        code: Machine-readable error code
        details: Additional context about the error
    """

    def __init__(
        self,
        message: str,
        code: str = "TABIMAGE_ERROR",
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.code = code
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for machine-readable reports."""
        return {
            "error": self.code,
            "message": self.message,
            "details": self.details,
        }


class ConfigurationError(TabImageError):
    """Raised when configuration is invalid or missing."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code="CONFIG_ERROR", details=details)


class ValidationError(TabImageError):
    """Raised when an invariant of a domain object does not hold."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code="VALIDATION_ERROR", details=details)


class ParseError(TabImageError):
    """Raised when delimited input cannot be parsed."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        details = details or {}
        if line is not None:
            details["line"] = line
        self.line = line
        super().__init__(message, code="PARSE_ERROR", details=details)


class SchemaError(TabImageError):
    """Raised when a cell does not fit the feature schema."""

    def __init__(
        self,
        message: str,
        column: Optional[str] = None,
        row: Optional[int] = None,
        value: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        details = details or {}
        for key, item in (("column", column), ("row", row), ("value", value)):
            if item is not None:
                details[key] = item
        super().__init__(message, code="SCHEMA_ERROR", details=details)


class DatasetIOError(TabImageError):
    """Raised when reading or writing dataset files fails.

    `missing_input` marks a required input file (table, schema, run
    configuration, manifest) that does not exist.
    """

    def __init__(
        self,
        message: str,
        path: Union[str, Path],
        details: Optional[Dict[str, Any]] = None,
        missing_input: bool = False,
    ):
        details = details or {}
        details["path"] = str(path)
        self.path = Path(path)
        self.missing_input = missing_input
        super().__init__(message, code="IO_ERROR", details=details)


class ManifestError(TabImageError):
    """Raised when a dataset manifest is malformed or inconsistent."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code="MANIFEST_ERROR", details=details)


class ProbeError(TabImageError):
    """Raised when the linear probe cannot be trained or evaluated."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, code="PROBE_ERROR", details=details)
