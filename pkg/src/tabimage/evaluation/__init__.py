"""Probe metrics and layout sweeps.

`tabimage.evaluation.sweep` depends on the probe, which depends on these
metrics; import it from its module.
"""

from tabimage.evaluation.metrics import (
    ProbeMetrics,
    macro_f1,
    mean_metrics,
    roc_auc,
    score_predictions,
)

__all__ = [
    "ProbeMetrics",
    "macro_f1",
    "mean_metrics",
    "roc_auc",
    "score_predictions",
]
