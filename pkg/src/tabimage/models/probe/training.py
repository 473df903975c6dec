"""Train and evaluate the linear probe on a built dataset.

Images are turned into vectors either by the decoder (m values per image) or
by box-averaging the pixels to a side×side grid. Vectors are standardized
with training statistics and scaled by 1/sqrt(d) so one learning rate suits
every representation.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from tabimage.common.exceptions import ProbeError
from tabimage.core.types import Origin, Representation, Split
from tabimage.data.ingest.normalization import apply_normalization
from tabimage.data.schemas.tables import ExpandedTable, NormalizationStats
from tabimage.encoding.layout import LayoutSpec, layout_from_dict
from tabimage.encoding.png_io import read_png
from tabimage.encoding.raster import ImageCanvas
from tabimage.evaluation.metrics import ProbeMetrics, score_predictions
from tabimage.models.probe.config import ProbeConfig
from tabimage.models.probe.logistic import SoftmaxRegression
from tabimage.pipeline.manifest import DatasetManifest, ManifestRecord
from tabimage.verification.decoder import decode

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass
class ProbeModel:
    """Fitted classifier plus the input scaling it was trained with."""
    regression: SoftmaxRegression
    mean: np.ndarray
    scale: np.ndarray
    config: ProbeConfig
    history: List[float]

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean) / self.scale

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return self.regression.predict_proba(self.transform(X))


def downsample(img: ImageCanvas, side: int) -> np.ndarray:
    """Box-average to side×side×3 in [0, 1] and flatten."""
    if side > min(img.width, img.height):
        raise ProbeError(f"cannot downsample a {img.width}x{img.height} image to {side}x{side}")
    ys = np.linspace(0, img.height, side + 1).astype(np.int64)
    xs = np.linspace(0, img.width, side + 1).astype(np.int64)
    pixels = img.pixels.astype(np.float64)
    sums = np.add.reduceat(np.add.reduceat(pixels, ys[:-1], axis=0), xs[:-1], axis=1)
    counts = np.outer(np.diff(ys), np.diff(xs))[..., None]
    return (sums / counts / 255.0).ravel()


def image_vector(img: ImageCanvas, layout: LayoutSpec, cfg: ProbeConfig) -> np.ndarray:
    if cfg.representation == Representation.DECODED_FEATURES:
        return decode(img, layout).values
    return downsample(img, cfg.downsample_side)


def load_vectors(
    records: Sequence[ManifestRecord],
    root: PathLike,
    layout: LayoutSpec,
    cfg: ProbeConfig,
    workers: int = 1,
) -> np.ndarray:
    root = Path(root)

    def load(record: ManifestRecord) -> np.ndarray:
        return image_vector(read_png(root / record.image_path), layout, cfg)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.stack(list(pool.map(load, records)))


def fit_vectors(
    X: np.ndarray, y: np.ndarray, n_classes: int, cfg: ProbeConfig
) -> ProbeModel:
    """Standardize, then fit a softmax regression on class indices y (0-based)."""
    if X.shape[0] == 0:
        raise ProbeError("training set is empty")
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    scale = np.where(std > 0, std, 1.0) * np.sqrt(X.shape[1])
    regression = SoftmaxRegression(X.shape[1], n_classes, l2=cfg.l2)
    history = regression.fit(
        (X - mean) / scale,
        y,
        learning_rate=cfg.learning_rate,
        epochs=cfg.epochs,
        batch_size=cfg.batch_size,
        seed=cfg.seed,
    )
    return ProbeModel(regression=regression, mean=mean, scale=scale, config=cfg, history=history)


def score_vectors(
    model: ProbeModel, X: np.ndarray, y: np.ndarray, fold: Optional[int] = None
) -> ProbeMetrics:
    if X.shape[0] == 0:
        raise ProbeError("evaluation set is empty")
    return score_predictions(y, model.predict_proba(X), fold=fold)


def train_probe(
    manifest: DatasetManifest,
    root: PathLike,
    fold: int,
    cfg: ProbeConfig,
    workers: int = 1,
) -> ProbeModel:
    """Fit the probe on fold `fold`'s training images.

    Raises:
        ProbeError: the fold has no training images or fewer than two classes.
    """
    records = _train_records(manifest, fold, cfg)
    if not records:
        raise ProbeError(f"fold {fold} has no training images")
    layout = layout_from_dict(manifest.header.layout)
    X = load_vectors(records, root, layout, cfg, workers)
    y = np.array([r.label - 1 for r in records], dtype=np.int64)
    model = fit_vectors(X, y, _n_classes(manifest), cfg)
    logger.info(
        f"fold {fold}: probe fitted on {len(records)} images "
        f"({cfg.representation.value}), loss {model.history[-1]:.4f}"
    )
    return model


def evaluate_probe(
    model: ProbeModel,
    manifest: DatasetManifest,
    root: PathLike,
    fold: int,
    workers: int = 1,
) -> ProbeMetrics:
    """Macro-F1 and AUC of `model` on fold `fold`'s test images."""
    records = manifest.select(fold=fold, split=Split.TEST)
    if not records:
        raise ProbeError(f"fold {fold} has no test images")
    layout = layout_from_dict(manifest.header.layout)
    X = load_vectors(records, root, layout, model.config, workers)
    y = np.array([r.label - 1 for r in records], dtype=np.int64)
    return score_vectors(model, X, y, fold=fold)


def raw_feature_probe(
    table: ExpandedTable, manifest: DatasetManifest, fold: int, cfg: ProbeConfig
) -> ProbeMetrics:
    """Same optimizer on the raw normalized features of the same fold rows.

    Uses the fold's normalization statistics from the manifest header and
    the original (non-augmented) training rows.
    """
    stats_record = manifest.header.normalization.get(str(fold))
    if stats_record is None:
        raise ProbeError(f"manifest has no normalization statistics for fold {fold}")
    stats = NormalizationStats(
        minimums=np.asarray(stats_record["min"], dtype=np.float64),
        maximums=np.asarray(stats_record["max"], dtype=np.float64),
        scope=manifest.header.normalization_scope,
    )
    values = apply_normalization(table.values, stats)
    train = [r.source_row for r in manifest.select(fold, Split.TRAIN, Origin.ORIGINAL)]
    test = [r.source_row for r in manifest.select(fold, Split.TEST)]
    if not train or not test:
        raise ProbeError(f"fold {fold} needs both training and test rows")
    model = fit_vectors(values[train], table.labels[train] - 1, _n_classes(manifest), cfg)
    return score_vectors(model, values[test], table.labels[test] - 1, fold=fold)


def _train_records(manifest: DatasetManifest, fold: int, cfg: ProbeConfig) -> List[ManifestRecord]:
    origin = None if cfg.include_augmented else Origin.ORIGINAL
    return manifest.select(fold=fold, split=Split.TRAIN, origin=origin)


def _n_classes(manifest: DatasetManifest) -> int:
    if manifest.header.class_names:
        return len(manifest.header.class_names)
    return max(r.label for r in manifest.records)
