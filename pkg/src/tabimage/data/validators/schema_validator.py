"""Schema validation utilities.

Checks that a parsed header and a feature schema describe the same table.
"""

from typing import Any, Dict, List, Sequence

from tabimage.common.exceptions import SchemaError
from tabimage.data.schemas.feature_schema import FeatureSchema


class ValidationResult:
    """Result of validation operation."""

    def __init__(self):
        self.valid: bool = True
        self.errors: List[Dict[str, Any]] = []

    def add_error(self, column: str, error: str):
        """Add validation error."""
        self.valid = False
        self.errors.append({
            "column": column,
            "error": error,
        })

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "valid": self.valid,
            "error_count": len(self.errors),
            "errors": self.errors,
        }


def check_header(header: Sequence[str], schema: FeatureSchema) -> ValidationResult:
    """Collect every mismatch between a header and a schema.

    Args:
        header: Column names from the parsed table
        schema: Feature schema to check against

    Returns:
        ValidationResult listing missing and unaccounted columns
    """
    result = ValidationResult()
    present = set(header)

    for column in schema.columns:
        if column.name not in present:
            result.add_error(column.name, "schema column missing from header")
    if schema.label not in present:
        result.add_error(schema.label, "label column missing from header")

    declared = {c.name for c in schema.columns} | {schema.label} | set(schema.ignore)
    for name in header:
        if name not in declared:
            result.add_error(name, "header column not declared in schema (add it to 'ignore')")

    return result


def validate_header(header: Sequence[str], schema: FeatureSchema) -> None:
    """Raise SchemaError on the first header/schema mismatch."""
    result = check_header(header, schema)
    if not result.valid:
        first = result.errors[0]
        raise SchemaError(
            f"{first['error']}: '{first['column']}'",
            column=first["column"],
            details={"errors": result.errors},
        )
