"""Table containers passed between ingest, encoding and the pipeline."""

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from tabimage.common.exceptions import ValidationError
from tabimage.core.types import NormalizationScope


@dataclass(frozen=True)
class RawTable:
    """Header plus rectangular text rows, exactly as parsed."""
    header: Tuple[str, ...]
    rows: Tuple[Tuple[str, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise ValidationError("table has no data rows")
        width = len(self.header)
        for index, row in enumerate(self.rows):
            if len(row) != width:
                raise ValidationError(
                    f"row {index + 2} has {len(row)} cells, expected {width}"
                )

    @property
    def n(self) -> int:
        return len(self.rows)

    def column_index(self, name: str) -> int:
        return self.header.index(name)


@dataclass(frozen=True)
class ExpandedTable:
    """Numeric n×m matrix after schema expansion, before normalization.

    Labels are 1..C, assigned by sorted order of the distinct label strings.
    """
    values: np.ndarray
    labels: np.ndarray
    feature_names: Tuple[str, ...]
    class_names: Tuple[str, ...]

    def __post_init__(self):
        if self.values.ndim != 2:
            raise ValidationError("values must be a 2-D matrix")
        if self.values.shape[0] != self.labels.shape[0]:
            raise ValidationError("values and labels disagree on n")
        if self.values.shape[1] != len(self.feature_names):
            raise ValidationError("values and feature_names disagree on m")
        _check_labels(self.labels, len(self.class_names))

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def m(self) -> int:
        return int(self.values.shape[1])

    @property
    def n_classes(self) -> int:
        return len(self.class_names)


@dataclass(frozen=True)
class NormalizationStats:
    """Per-feature min/max and the scope they were fitted on."""
    minimums: np.ndarray
    maximums: np.ndarray
    scope: NormalizationScope

    def __post_init__(self):
        if self.minimums.shape != self.maximums.shape:
            raise ValidationError("minimums and maximums must have the same shape")
        if np.any(self.minimums > self.maximums):
            raise ValidationError("min_j must not exceed max_j")

    @property
    def m(self) -> int:
        return int(self.minimums.shape[0])

    def to_dict(self) -> dict:
        return {
            "scope": self.scope.value,
            "min": [float(v) for v in self.minimums],
            "max": [float(v) for v in self.maximums],
        }


@dataclass(frozen=True)
class NormalizedTable:
    """n×m matrix of values in [0, 1], labels 1..C and optional fold ids."""
    values: np.ndarray
    labels: np.ndarray
    feature_names: Tuple[str, ...]
    class_names: Tuple[str, ...]
    folds: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[1] != len(self.feature_names):
            raise ValidationError("values and feature_names disagree on m")
        if self.values.shape[0] != self.labels.shape[0]:
            raise ValidationError("values and labels disagree on n")
        if not np.all(np.isfinite(self.values)):
            raise ValidationError("normalized values must be finite")
        if self.values.size and (self.values.min() < 0.0 or self.values.max() > 1.0):
            raise ValidationError("normalized values must lie in [0, 1]")
        _check_labels(self.labels, len(self.class_names))
        if self.folds.size and self.folds.shape[0] != self.values.shape[0]:
            raise ValidationError("fold assignment length must equal n")

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def m(self) -> int:
        return int(self.values.shape[1])

    @property
    def n_classes(self) -> int:
        return len(self.class_names)


def _check_labels(labels: np.ndarray, n_classes: int) -> None:
    if n_classes < 1:
        raise ValidationError("at least one class is required")
    present: List[int] = sorted(set(int(v) for v in labels))
    if present != list(range(1, n_classes + 1)):
        raise ValidationError(
            f"labels must cover exactly 1..{n_classes}, found {present[:10]}"
        )
