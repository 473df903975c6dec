"""Min-max normalization with an explicit fitting scope."""

import logging
from typing import Optional, Sequence, Union

import numpy as np

from tabimage.common.exceptions import ValidationError
from tabimage.core.types import NormalizationScope
from tabimage.data.schemas.tables import ExpandedTable, NormalizationStats, NormalizedTable

logger = logging.getLogger(__name__)

CONSTANT_FEATURE_VALUE = 0.5


def fit_normalization(
    values: np.ndarray,
    fit_rows: Union[Sequence[int], np.ndarray],
    scope: NormalizationScope = NormalizationScope.TRAIN_ONLY,
) -> NormalizationStats:
    """Fit per-feature min/max.

    Args:
        values: n×m matrix of expanded features
        fit_rows: Row indices to fit on when scope is train_only
        scope: train_only uses fit_rows; whole_dataset uses every row

    Returns:
        NormalizationStats for the m features
    """
    fit_rows = np.asarray(fit_rows, dtype=np.int64)
    if fit_rows.size == 0:
        raise ValidationError("fit_rows must not be empty")

    subset = values if scope == NormalizationScope.WHOLE_DATASET else values[fit_rows]
    stats = NormalizationStats(
        minimums=subset.min(axis=0).astype(np.float64),
        maximums=subset.max(axis=0).astype(np.float64),
        scope=scope,
    )
    constant = int(np.sum(stats.minimums == stats.maximums))
    if constant:
        logger.warning(f"{constant} constant feature(s) will render at {CONSTANT_FEATURE_VALUE}")
    return stats


def apply_normalization(values: np.ndarray, stats: NormalizationStats) -> np.ndarray:
    """Map values into [0, 1] with the fitted statistics.

    Values outside the fitted range are clamped; constant features map to 0.5.
    """
    if values.shape[1] != stats.m:
        raise ValidationError(f"stats cover {stats.m} features, values have {values.shape[1]}")

    # Halved operands keep ranges near the float limit finite.
    half_span = stats.maximums / 2 - stats.minimums / 2
    constant = stats.maximums == stats.minimums
    safe_span = np.where(constant, 1.0, half_span)
    with np.errstate(over="ignore"):
        scaled = (values / 2 - stats.minimums / 2) / safe_span
    scaled = np.where(constant, CONSTANT_FEATURE_VALUE, scaled)
    return np.clip(scaled, 0.0, 1.0)


def denormalize(values: np.ndarray, stats: NormalizationStats) -> np.ndarray:
    """Inverse map for non-constant features: x = min + x'(max - min)."""
    return stats.minimums + values * (stats.maximums - stats.minimums)


def normalize_table(
    table: ExpandedTable,
    stats: NormalizationStats,
    folds: Optional[np.ndarray] = None,
) -> NormalizedTable:
    """Build a NormalizedTable from an expanded table and fitted stats."""
    return NormalizedTable(
        values=apply_normalization(table.values, stats),
        labels=table.labels,
        feature_names=table.feature_names,
        class_names=table.class_names,
        folds=folds if folds is not None else np.zeros(0, dtype=np.int64),
    )
