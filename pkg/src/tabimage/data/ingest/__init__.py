"""Ingest - parse, expand and normalize tabular input."""

from tabimage.data.ingest.expansion import expand_features
from tabimage.data.ingest.normalization import (
    apply_normalization,
    denormalize,
    fit_normalization,
    normalize_table,
)
from tabimage.data.ingest.parser import parse_table, read_table

__all__ = [
    "expand_features",
    "apply_normalization",
    "denormalize",
    "fit_normalization",
    "normalize_table",
    "parse_table",
    "read_table",
]
