"""Synthetic data generators."""

from tabimage.data.generators.synthetic import (
    SyntheticDataset,
    SyntheticTableGenerator,
    random_schema,
)

__all__ = ["SyntheticDataset", "SyntheticTableGenerator", "random_schema"]
