"""Linear probe over bar-image datasets."""

from tabimage.models.probe.config import ProbeConfig
from tabimage.models.probe.logistic import SoftmaxRegression, numerical_gradient
from tabimage.models.probe.training import (
    ProbeModel,
    downsample,
    evaluate_probe,
    fit_vectors,
    raw_feature_probe,
    score_vectors,
    train_probe,
)

__all__ = [
    "ProbeConfig",
    "ProbeModel",
    "SoftmaxRegression",
    "downsample",
    "evaluate_probe",
    "fit_vectors",
    "numerical_gradient",
    "raw_feature_probe",
    "score_vectors",
    "train_probe",
]
