"""Core enums."""

from tabimage.core.types import (
    FeatureKind,
    NormalizationScope,
    Origin,
    Representation,
    Split,
)

__all__ = [
    "FeatureKind",
    "NormalizationScope",
    "Origin",
    "Representation",
    "Split",
]
