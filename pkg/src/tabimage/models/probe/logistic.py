"""Multinomial logistic regression trained by mini-batch gradient descent."""

import logging
from typing import List, Tuple

import numpy as np

from tabimage.common.exceptions import ProbeError

logger = logging.getLogger(__name__)


class SoftmaxRegression:
    """Softmax classifier over C classes with L2 on the weights (not the bias).

    Targets are class indices 0..C-1.
    """

    def __init__(self, n_features: int, n_classes: int, l2: float = 0.0):
        if n_features < 1 or n_classes < 2:
            raise ProbeError(
                f"need at least 1 feature and 2 classes, got {n_features} and {n_classes}"
            )
        self.n_features = n_features
        self.n_classes = n_classes
        self.l2 = l2
        self.weights = np.zeros((n_features, n_classes), dtype=np.float64)
        self.bias = np.zeros(n_classes, dtype=np.float64)

    def logits(self, X: np.ndarray) -> np.ndarray:
        return X @ self.weights + self.bias

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        z = self.logits(X)
        z = z - z.max(axis=1, keepdims=True)
        e = np.exp(z)
        return e / e.sum(axis=1, keepdims=True)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.argmax(self.logits(X), axis=1)

    def loss(self, X: np.ndarray, y: np.ndarray) -> float:
        """Mean cross-entropy plus 0.5 * l2 * ||W||^2."""
        z = self.logits(X)
        z = z - z.max(axis=1, keepdims=True)
        log_probs = z - np.log(np.exp(z).sum(axis=1, keepdims=True))
        nll = -log_probs[np.arange(len(y)), y].mean()
        return float(nll + 0.5 * self.l2 * np.sum(self.weights ** 2))

    def gradient(self, X: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Analytic gradient of `loss` with respect to (weights, bias)."""
        residual = self.predict_proba(X)
        residual[np.arange(len(y)), y] -= 1.0
        residual /= len(y)
        return X.T @ residual + self.l2 * self.weights, residual.sum(axis=0)

    def fit(
        self,
        X: np.ndarray,
        y: np.ndarray,
        learning_rate: float,
        epochs: int,
        batch_size: int,
        seed: int,
    ) -> List[float]:
        """Mini-batch gradient descent; returns the full-batch loss after each epoch."""
        if X.shape[0] == 0:
            raise ProbeError("cannot fit on an empty training set")
        if X.shape[1] != self.n_features:
            raise ProbeError(f"expected {self.n_features} features, got {X.shape[1]}")
        y = np.asarray(y, dtype=np.int64)
        rng = np.random.default_rng(seed)
        history = []
        for epoch in range(epochs):
            order = rng.permutation(X.shape[0])
            for start in range(0, len(order), batch_size):
                batch = order[start:start + batch_size]
                grad_w, grad_b = self.gradient(X[batch], y[batch])
                self.weights -= learning_rate * grad_w
                self.bias -= learning_rate * grad_b
            history.append(self.loss(X, y))
        logger.debug(f"fit {epochs} epochs, final loss {history[-1]:.6f}")
        return history


def numerical_gradient(
    model: SoftmaxRegression, X: np.ndarray, y: np.ndarray, eps: float = 1e-6
) -> Tuple[np.ndarray, np.ndarray]:
    """Central finite-difference gradient of model.loss, for checking `gradient`."""
    grads = []
    for param in (model.weights, model.bias):
        grad = np.zeros_like(param)
        for index in np.ndindex(param.shape):
            original = param[index]
            param[index] = original + eps
            upper = model.loss(X, y)
            param[index] = original - eps
            lower = model.loss(X, y)
            param[index] = original
            grad[index] = (upper - lower) / (2 * eps)
        grads.append(grad)
    return grads[0], grads[1]
