"""Fold assignment for cross-validation and explicit holdout splits."""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, List, Union

import numpy as np
from sklearn.model_selection import KFold, StratifiedKFold

from tabimage.common.constants import PipelineConstants
from tabimage.common.exceptions import ConfigurationError, ValidationError
from tabimage.data.schemas.tables import ExpandedTable, NormalizedTable

logger = logging.getLogger(__name__)

LabelledTable = Union[ExpandedTable, NormalizedTable]


@dataclass(frozen=True)
class SplitPlan:
    """Test-fold id per row.

    In k-fold mode row i is tested in fold `folds[i]` and trained on in every
    other fold. A holdout plan has k=2 but only fold 0 is built: rows with
    fold id 0 are the test set, the rest the training set.
    """
    folds: np.ndarray
    k: int
    seed: int
    stratified: bool
    holdout: bool = False

    def __post_init__(self):
        if self.k < 2:
            raise ConfigurationError(f"k must be at least 2, got {self.k}")
        if self.folds.ndim != 1 or self.folds.size == 0:
            raise ValidationError("fold assignment must be a non-empty vector")
        if self.folds.min() < 0 or self.folds.max() >= self.k:
            raise ValidationError(f"fold ids must lie in 0..{self.k - 1}")

    @classmethod
    def from_test_mask(cls, mask: Union[List[bool], np.ndarray], seed: int = 0) -> "SplitPlan":
        """Holdout plan from a boolean mask (True = test row)."""
        mask = np.asarray(mask, dtype=bool)
        if mask.all() or not mask.any():
            raise ValidationError("test mask must select some but not all rows")
        folds = np.where(mask, 0, 1).astype(np.int64)
        return cls(folds=folds, k=2, seed=seed, stratified=False, holdout=True)

    @property
    def n(self) -> int:
        return int(self.folds.shape[0])

    @property
    def fold_ids(self) -> List[int]:
        """Folds a dataset build materializes."""
        return [0] if self.holdout else list(range(self.k))

    def test_rows(self, fold: int) -> np.ndarray:
        self._check_fold(fold)
        return np.flatnonzero(self.folds == fold)

    def train_rows(self, fold: int) -> np.ndarray:
        self._check_fold(fold)
        return np.flatnonzero(self.folds != fold)

    def fold_sizes(self) -> Dict[int, int]:
        return {f: int(np.sum(self.folds == f)) for f in self.fold_ids}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "seed": self.seed,
            "stratified": self.stratified,
            "holdout": self.holdout,
            "fold_sizes": {str(f): size for f, size in self.fold_sizes().items()},
        }

    def _check_fold(self, fold: int) -> None:
        if fold not in self.fold_ids:
            raise ValidationError(f"fold {fold} is not part of this plan {self.fold_ids}")


def make_splits(
    table: LabelledTable,
    k: int = PipelineConstants.FOLDS,
    seed: int = PipelineConstants.SEED,
    stratified: bool = True,
) -> SplitPlan:
    """Deterministic (optionally stratified) k-fold partition of the rows.

    Raises:
        ConfigurationError: k < 2 or fewer rows than folds.
        ValidationError: a class has fewer than k rows under stratification.
    """
    if k < 2:
        raise ConfigurationError(f"k must be at least 2, got {k}")
    if table.n < k:
        raise ConfigurationError(f"cannot split {table.n} rows into {k} folds")

    labels = np.asarray(table.labels)
    folds = np.empty(table.n, dtype=np.int64)
    if stratified:
        counts = Counter(int(v) for v in labels)
        too_small = {label: c for label, c in sorted(counts.items()) if c < k}
        if too_small:
            raise ValidationError(
                f"stratified {k}-fold split needs at least {k} rows per class",
                details={"class_counts": too_small},
            )
        splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
        indices = splitter.split(np.zeros((table.n, 1)), labels)
    else:
        splitter = KFold(n_splits=k, shuffle=True, random_state=seed)
        indices = splitter.split(np.zeros((table.n, 1)))

    for fold, (_, test_index) in enumerate(indices):
        folds[test_index] = fold

    plan = SplitPlan(folds=folds, k=k, seed=seed, stratified=stratified)
    logger.info(f"split {table.n} rows into {k} folds: {plan.fold_sizes()}")
    return plan
