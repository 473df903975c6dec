"""Classification metrics for the linear probe: macro-F1 and ROC AUC."""

from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.stats import rankdata
from sklearn.metrics import f1_score

from tabimage.common.exceptions import ProbeError


@dataclass(frozen=True)
class ProbeMetrics:
    """Scores of one probe on one fold."""
    macro_f1: float
    auc: float
    accuracy: float
    n_samples: int
    fold: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def macro_f1(y_true: Sequence[int], y_pred: Sequence[int], n_classes: int) -> float:
    """Unweighted mean of per-class F1 over classes 0..n_classes-1."""
    return float(
        f1_score(y_true, y_pred, labels=list(range(n_classes)), average="macro", zero_division=0)
    )


def binary_auc(positive: np.ndarray, scores: np.ndarray) -> float:
    """Mann-Whitney AUC with midranks for ties."""
    positive = np.asarray(positive, dtype=bool)
    n_pos = int(positive.sum())
    n_neg = int(positive.size - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise ProbeError("AUC is undefined when only one class is present")
    ranks = rankdata(scores, method="average")
    return float((ranks[positive].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg))


def roc_auc(y_true: Sequence[int], proba: np.ndarray) -> float:
    """Binary AUC on the class-1 score, or one-vs-rest macro AUC for C > 2.

    Raises:
        ProbeError: fewer than two classes are present in y_true.
    """
    y_true = np.asarray(y_true, dtype=np.int64)
    proba = np.asarray(proba, dtype=np.float64)
    present = np.unique(y_true)
    if present.size < 2:
        raise ProbeError("AUC is undefined when only one class is present")
    if proba.shape[1] == 2:
        return binary_auc(y_true == 1, proba[:, 1])
    return float(np.mean([binary_auc(y_true == c, proba[:, c]) for c in present]))


def score_predictions(
    y_true: Sequence[int], proba: np.ndarray, fold: Optional[int] = None
) -> ProbeMetrics:
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.argmax(proba, axis=1)
    return ProbeMetrics(
        macro_f1=macro_f1(y_true, y_pred, proba.shape[1]),
        auc=roc_auc(y_true, proba),
        accuracy=float(np.mean(y_pred == y_true)),
        n_samples=int(y_true.size),
        fold=fold,
    )


def mean_metrics(per_fold: List[ProbeMetrics]) -> ProbeMetrics:
    """Cross-fold mean (fold=None, n_samples summed)."""
    if not per_fold:
        raise ProbeError("no fold metrics to average")
    return ProbeMetrics(
        macro_f1=float(np.mean([m.macro_f1 for m in per_fold])),
        auc=float(np.mean([m.auc for m in per_fold])),
        accuracy=float(np.mean([m.accuracy for m in per_fold])),
        n_samples=sum(m.n_samples for m in per_fold),
    )
