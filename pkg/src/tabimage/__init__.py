"""tabimage - tabular rows rendered as bar images for vision models."""

__version__ = "0.1.0"

from tabimage.core.types import FeatureKind, NormalizationScope, Origin, Representation, Split

__all__ = [
    "FeatureKind",
    "NormalizationScope",
    "Origin",
    "Representation",
    "Split",
]
