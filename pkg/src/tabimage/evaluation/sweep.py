"""Row-arrangement sweep: decode fidelity and probe scores per row count r."""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from tabimage.augmentation.augmenter import AugmentConfig
from tabimage.common.constants import EncodingConstants
from tabimage.core.types import NormalizationScope
from tabimage.data.ingest.normalization import (
    apply_normalization,
    fit_normalization,
    normalize_table,
)
from tabimage.data.schemas.tables import ExpandedTable
from tabimage.encoding.layout import LayoutSpec, make_layout
from tabimage.encoding.raster import rasterize
from tabimage.evaluation.metrics import ProbeMetrics, mean_metrics
from tabimage.models.probe.config import ProbeConfig
from tabimage.models.probe.training import fit_vectors, score_vectors
from tabimage.pipeline.splits import SplitPlan
from tabimage.verification.decoder import decode
from tabimage.verification.report import roundtrip_report

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LayoutSweepRow:
    requested_rows: int
    rows: int
    columns: int
    bar_width: float
    bar_height: float
    clean_error: float
    augmented_error: float
    augmented_error_px: float
    macro_f1: Optional[float] = None
    auc: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def run_layout_sweep(
    table: ExpandedTable,
    rows: Sequence[int],
    aug_cfg: AugmentConfig,
    n_trials: int = 200,
    plan: Optional[SplitPlan] = None,
    probe_cfg: Optional[ProbeConfig] = None,
    width: int = EncodingConstants.WIDTH,
    height: int = EncodingConstants.HEIGHT,
    workers: int = 1,
) -> List[LayoutSweepRow]:
    """For each r: layout geometry, round-trip errors and (with a plan) probe scores.

    Errors are mean absolute decode deviations over `n_trials` images, in
    normalized units and, for the augmented images, in pixels. The probe is
    fitted on decoded features of clean training images in memory, one model
    per fold, and the fold scores are averaged.
    """
    stats = fit_normalization(table.values, np.arange(table.n), NormalizationScope.WHOLE_DATASET)
    normalized = normalize_table(table, stats, folds=plan.folds if plan is not None else None)

    results = []
    for r in rows:
        layout = make_layout(table.m, r, width, height)
        report = roundtrip_report(normalized, layout, aug_cfg, n_trials, workers=workers)
        macro_f1 = auc = None
        if plan is not None:
            scores = _probe_scores(table, plan, layout, probe_cfg or ProbeConfig())
            macro_f1, auc = scores.macro_f1, scores.auc
        row = LayoutSweepRow(
            requested_rows=r,
            rows=layout.rows,
            columns=layout.columns,
            bar_width=layout.bar_width,
            bar_height=layout.bar_height,
            clean_error=report.clean_mean_error,
            augmented_error=report.augmented_mean_error,
            augmented_error_px=report.augmented_mean_error_px,
            macro_f1=macro_f1,
            auc=auc,
        )
        logger.info(
            f"r={r}: c={layout.columns} b={layout.bar_width:.2f} "
            f"clean={row.clean_error:.4f} augmented={row.augmented_error_px:.3f}px"
        )
        results.append(row)
    return results


def _probe_scores(
    table: ExpandedTable, plan: SplitPlan, layout: LayoutSpec, cfg: ProbeConfig
) -> ProbeMetrics:
    per_fold = []
    n_classes = table.n_classes
    for fold in plan.fold_ids:
        train, test = plan.train_rows(fold), plan.test_rows(fold)
        stats = fit_normalization(table.values, train)
        values = apply_normalization(table.values, stats)
        decoded = np.stack([decode(rasterize(v, layout), layout).values for v in values])
        model = fit_vectors(decoded[train], table.labels[train] - 1, n_classes, cfg)
        per_fold.append(score_vectors(model, decoded[test], table.labels[test] - 1, fold=fold))
    return mean_metrics(per_fold)
