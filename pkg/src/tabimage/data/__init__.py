"""Data layer - schemas, ingest, validators, generators."""

from tabimage.data.schemas import (
    ColumnSpec,
    ExpandedTable,
    FeatureSchema,
    NormalizationStats,
    NormalizedTable,
    RawTable,
    load_schema,
)

__all__ = [
    "ColumnSpec",
    "ExpandedTable",
    "FeatureSchema",
    "NormalizationStats",
    "NormalizedTable",
    "RawTable",
    "load_schema",
]
