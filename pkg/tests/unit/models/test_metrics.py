"""Tests for macro-F1 and AUC."""

import numpy as np
import pytest
from sklearn.metrics import roc_auc_score

from tabimage.common.exceptions import ProbeError
from tabimage.evaluation import ProbeMetrics, macro_f1, mean_metrics, roc_auc, score_predictions


def _softmax(z: np.ndarray) -> np.ndarray:
    e = np.exp(z - z.max(axis=1, keepdims=True))
    return e / e.sum(axis=1, keepdims=True)


class TestMacroF1:
    """Unweighted per-class F1."""

    def test_perfect(self):
        """Correct predictions score 1."""
        assert macro_f1([0, 1, 2, 1], [0, 1, 2, 1], 3) == 1.0

    def test_missing_class_counts_as_zero(self):
        """A class never predicted or present contributes 0."""
        assert macro_f1([0, 0, 1, 1], [0, 0, 1, 1], 3) == pytest.approx(2 / 3)

    def test_known_value(self):
        """Two classes with one error each way."""
        y_true = [0, 0, 0, 1, 1, 1]
        y_pred = [0, 0, 1, 1, 1, 0]

        assert macro_f1(y_true, y_pred, 2) == pytest.approx(2 / 3)


class TestRocAuc:
    """Rank-based AUC."""

    def test_perfect_binary(self):
        """Perfect ranking scores 1."""
        proba = np.array([[0.9, 0.1], [0.8, 0.2], [0.3, 0.7], [0.1, 0.9]])

        assert roc_auc([0, 0, 1, 1], proba) == 1.0

    def test_random_scores_near_half(self):
        """Label-independent scores give AUC 0.5 +- 0.05 over 1000 samples."""
        rng = np.random.default_rng(11)
        y = rng.integers(0, 2, size=1000)
        p = rng.random(1000)

        assert roc_auc(y, np.column_stack([1 - p, p])) == pytest.approx(0.5, abs=0.05)

    def test_monotone_invariance(self, rng):
        """A strictly increasing transform of the scores leaves AUC unchanged."""
        y = rng.integers(0, 2, size=200)
        p = np.clip(rng.normal(0.5 + 0.2 * y, 0.2), 0.0, 1.0)
        q = np.exp(3 * p) + 1

        first = roc_auc(y, np.column_stack([1 - p, p]))
        second = roc_auc(y, np.column_stack([-q, q]))

        assert first == pytest.approx(second)

    def test_ties_use_midranks(self):
        """Tied scores across classes count one half."""
        proba = np.array([[0.5, 0.5], [0.5, 0.5]])

        assert roc_auc([0, 1], proba) == 0.5

    def test_matches_sklearn_binary(self, rng):
        """Binary AUC agrees with scikit-learn."""
        y = rng.integers(0, 2, size=300)
        p = rng.random(300) * 0.5 + 0.3 * y

        assert roc_auc(y, np.column_stack([1 - p, p])) == pytest.approx(roc_auc_score(y, p))

    def test_matches_sklearn_multiclass(self, rng):
        """One-vs-rest macro AUC agrees with scikit-learn."""
        y = rng.integers(0, 4, size=400)
        proba = _softmax(rng.normal(size=(400, 4)) + np.eye(4)[y])

        expected = roc_auc_score(y, proba, multi_class="ovr", average="macro")

        assert roc_auc(y, proba) == pytest.approx(expected)

    def test_single_class_rejected(self):
        """AUC needs both classes."""
        with pytest.raises(ProbeError):
            roc_auc([1, 1, 1], np.full((3, 2), 0.5))


class TestScorePredictions:
    """Combined scoring."""

    def test_score_predictions(self):
        """Accuracy, F1 and AUC come from one probability matrix."""
        proba = np.array([[0.9, 0.1], [0.2, 0.8], [0.6, 0.4], [0.3, 0.7]])
        metrics = score_predictions([0, 1, 1, 1], proba, fold=2)

        assert metrics.accuracy == 0.75
        assert metrics.auc == 1.0
        assert metrics.n_samples == 4
        assert metrics.to_dict()["fold"] == 2

    def test_mean_metrics(self):
        """Fold metrics average; sample counts add up."""
        folds = [ProbeMetrics(0.8, 0.9, 0.85, 10, 0), ProbeMetrics(0.6, 0.7, 0.65, 12, 1)]
        mean = mean_metrics(folds)

        assert mean.macro_f1 == pytest.approx(0.7)
        assert mean.auc == pytest.approx(0.8)
        assert mean.n_samples == 22
        assert mean.fold is None

    def test_mean_of_nothing(self):
        """Averaging no folds is an error."""
        with pytest.raises(ProbeError):
            mean_metrics([])
