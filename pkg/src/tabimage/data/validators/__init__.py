"""Validators - header/schema consistency checks."""

from tabimage.data.validators.schema_validator import (
    ValidationResult,
    check_header,
    validate_header,
)

__all__ = ["ValidationResult", "check_header", "validate_header"]
