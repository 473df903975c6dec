"""Core types and enums shared across the pipeline."""

from enum import Enum


class FeatureKind(str, Enum):
    """How a schema column is turned into expanded features."""
    NUMERIC = "numeric"
    ORDINAL = "ordinal"
    CATEGORICAL = "categorical"
    BOOLEAN = "boolean"


class NormalizationScope(str, Enum):
    """Which rows min-max statistics are fitted on."""
    TRAIN_ONLY = "train_only"
    WHOLE_DATASET = "whole_dataset"


class Origin(str, Enum):
    """Provenance of an emitted image."""
    ORIGINAL = "original"
    AUGMENTED = "augmented"


class Split(str, Enum):
    """Partition an emitted image belongs to."""
    TRAIN = "train"
    TEST = "test"
    ALL = "all"


class Representation(str, Enum):
    """Input representation fed to the linear probe."""
    DECODED_FEATURES = "decoded_features"
    PIXELS_DOWNSAMPLED = "pixels_downsampled"
