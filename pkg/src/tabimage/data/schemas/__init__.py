"""Schemas - feature schema and table containers."""

from tabimage.data.schemas.feature_schema import ColumnSpec, FeatureSchema, load_schema
from tabimage.data.schemas.tables import (
    ExpandedTable,
    NormalizationStats,
    NormalizedTable,
    RawTable,
)

__all__ = [
    "ColumnSpec",
    "FeatureSchema",
    "load_schema",
    "ExpandedTable",
    "NormalizationStats",
    "NormalizedTable",
    "RawTable",
]
