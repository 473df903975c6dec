"""Round-trip fidelity report: decode error on clean and augmented images."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from tabimage.augmentation.augmenter import AugmentConfig, augment_image
from tabimage.augmentation.rng import RngStream
from tabimage.common.constants import DecoderConstants, FormatVersions
from tabimage.common.exceptions import ValidationError
from tabimage.data.schemas.tables import NormalizedTable
from tabimage.encoding.layout import LayoutSpec
from tabimage.encoding.raster import rasterize
from tabimage.verification.decoder import decode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RoundtripReport:
    """Per-feature absolute decode deviations, in normalized units."""
    feature_names: Tuple[str, ...]
    clean_mean: np.ndarray
    clean_max: np.ndarray
    augmented_mean: np.ndarray
    augmented_max: np.ndarray
    augmented_image_max: float
    n_trials: int
    bar_width: float

    @property
    def clean_mean_error(self) -> float:
        return float(self.clean_mean.mean())

    @property
    def clean_max_error(self) -> float:
        return float(self.clean_max.max())

    @property
    def augmented_mean_error(self) -> float:
        return float(self.augmented_mean.mean())

    @property
    def augmented_max_error(self) -> float:
        """Worst per-image mean deviation over all trials."""
        return self.augmented_image_max

    @property
    def augmented_feature_max_error(self) -> float:
        return float(self.augmented_max.max())

    @property
    def augmented_mean_error_px(self) -> float:
        """Mean augmented deviation expressed in pixels of bar width."""
        return self.augmented_mean_error * self.bar_width

    @property
    def clean_bound(self) -> float:
        """Worst clean deviation the encoder/decoder pair may show: 1.5 / b."""
        return 1.5 / self.bar_width

    def passes_gate(
        self,
        mean_gate: float = DecoderConstants.ROUNDTRIP_GATE_MEAN,
        max_gate: float = DecoderConstants.ROUNDTRIP_GATE_MAX,
    ) -> bool:
        return (
            self.clean_max_error <= self.clean_bound
            and self.augmented_mean_error < mean_gate
            and self.augmented_max_error < max_gate
        )

    def to_records(self) -> List[Dict[str, Any]]:
        """One record per feature."""
        return [
            {
                "feature": name,
                "clean_mean": float(self.clean_mean[j]),
                "clean_max": float(self.clean_max[j]),
                "augmented_mean": float(self.augmented_mean[j]),
                "augmented_max": float(self.augmented_max[j]),
            }
            for j, name in enumerate(self.feature_names)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "report_version": FormatVersions.REPORT_VERSION,
            "n_trials": self.n_trials,
            "bar_width": self.bar_width,
            "clean_mean": self.clean_mean_error,
            "clean_max": self.clean_max_error,
            "augmented_mean": self.augmented_mean_error,
            "augmented_max": self.augmented_max_error,
            "augmented_feature_max": self.augmented_feature_max_error,
            "passes_gate": self.passes_gate(),
            "features": self.to_records(),
        }


def roundtrip_report(
    table: NormalizedTable,
    layout: LayoutSpec,
    cfg: AugmentConfig,
    n_trials: int,
    workers: int = 1,
) -> RoundtripReport:
    """Encode rows, augment once per trial, decode both and aggregate errors.

    Trial t uses row t mod n and the stream (cfg.seed, row, t), so the report
    is deterministic for a fixed seed and any worker count.
    """
    if n_trials < 1:
        raise ValidationError(f"n_trials must be >= 1, got {n_trials}")
    if table.m != layout.m:
        raise ValidationError(f"table has {table.m} features, layout expects {layout.m}")

    root = RngStream(seed=cfg.seed)

    def trial(t: int) -> Tuple[np.ndarray, np.ndarray]:
        row = t % table.n
        expected = table.values[row]
        image = rasterize(expected, layout)
        clean = np.abs(decode(image, layout).values - expected)
        augmented_image = augment_image(image, cfg, root.child(row, t))
        augmented = np.abs(decode(augmented_image, layout).values - expected)
        return clean, augmented

    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(trial, range(n_trials)))

    clean = np.stack([r[0] for r in results])
    augmented = np.stack([r[1] for r in results])
    report = RoundtripReport(
        feature_names=table.feature_names,
        clean_mean=clean.mean(axis=0),
        clean_max=clean.max(axis=0),
        augmented_mean=augmented.mean(axis=0),
        augmented_max=augmented.max(axis=0),
        augmented_image_max=float(augmented.mean(axis=1).max()),
        n_trials=n_trials,
        bar_width=layout.bar_width,
    )
    logger.info(
        f"roundtrip over {n_trials} trials: clean max {report.clean_max_error:.4f}, "
        f"augmented mean {report.augmented_mean_error:.4f}, "
        f"worst image {report.augmented_max_error:.4f}"
    )
    return report
