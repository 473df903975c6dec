"""End-to-end dataset build: normalize per fold, encode, augment, persist.

Output tree under `out_dir`:

    manifest.jsonl
    {fold}/train/{row:06}_{aug:02}.png   aug 0 is the original
    {fold}/test/{row:06}_00.png          originals only
"""

import logging
import shutil
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

import numpy as np

from tabimage.augmentation.augmenter import AugmentConfig, augment_image
from tabimage.augmentation.rng import RngStream
from tabimage.common.constants import AugmentConstants, PipelineConstants
from tabimage.common.exceptions import DatasetIOError, ValidationError
from tabimage.core.types import NormalizationScope, Origin, Split
from tabimage.data.ingest.normalization import apply_normalization, fit_normalization
from tabimage.data.schemas.tables import ExpandedTable
from tabimage.encoding.layout import LayoutSpec
from tabimage.encoding.png_io import write_png
from tabimage.encoding.raster import ImageCanvas, rasterize
from tabimage.pipeline.manifest import (
    DatasetManifest,
    ManifestHeader,
    ManifestRecord,
    checksum_bytes,
    image_path,
    write_manifest,
)
from tabimage.pipeline.splits import SplitPlan

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class _ImageJob:
    fold: int
    split: Split
    row: int
    aug_index: int
    label: int


def build_dataset(
    table: ExpandedTable,
    plan: SplitPlan,
    layout: LayoutSpec,
    aug_cfg: AugmentConfig,
    out_dir: PathLike,
    scope: NormalizationScope = NormalizationScope.TRAIN_ONLY,
    workers: int = 1,
    augment_max_rows: Optional[int] = AugmentConstants.AUGMENT_MAX_ROWS,
    schema_digest: Optional[str] = None,
    overwrite: bool = False,
) -> DatasetManifest:
    """Materialize every fold of `plan` as PNG files plus a manifest.

    Test images are originals only; each training row yields its original
    plus K augmentations drawn from the stream (aug_cfg.seed, row, aug).
    Normalization is refit on each fold's training rows (train_only) or fitted
    once on all rows (whole_dataset).

    Raises:
        ValidationError: table, plan and layout disagree on n or m.
        DatasetIOError: out_dir already holds a dataset and overwrite is off,
            or a file cannot be written.
    """
    out_dir = Path(out_dir)
    if plan.n != table.n:
        raise ValidationError(f"split plan covers {plan.n} rows, table has {table.n}")
    if layout.m != table.m:
        raise ValidationError(f"layout is for {layout.m} features, table has {table.m}")
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    _prepare_out_dir(out_dir, overwrite)

    skipped = augment_max_rows is not None and table.n >= augment_max_rows and aug_cfg.k > 0
    k = 0 if skipped else aug_cfg.k
    if skipped:
        logger.warning(
            f"table has {table.n} rows (>= {augment_max_rows}); augmentation skipped, K=0"
        )

    root = RngStream(seed=aug_cfg.seed)
    whole_stats = None
    if scope == NormalizationScope.WHOLE_DATASET:
        whole_stats = fit_normalization(table.values, np.arange(table.n), scope)

    records: List[ManifestRecord] = []
    normalization: Dict[str, dict] = {}
    for fold in plan.fold_ids:
        train_rows, test_rows = plan.train_rows(fold), plan.test_rows(fold)
        stats = whole_stats
        if stats is None:
            stats = fit_normalization(table.values, train_rows, scope)
        normalization[str(fold)] = stats.to_dict()
        values = apply_normalization(table.values, stats)

        jobs = _fold_jobs(fold, train_rows, test_rows, table.labels, k)

        def render(job: _ImageJob) -> ManifestRecord:
            canvas = rasterize(values[job.row], layout)
            if job.aug_index > 0:
                canvas = augment_image(canvas, aug_cfg, root.child(job.row, job.aug_index))
            relative = image_path(job.fold, job.split, job.row, job.aug_index)
            data = write_png(canvas, out_dir / relative)
            return ManifestRecord(
                image_path=relative,
                label=job.label,
                fold=job.fold,
                split=job.split,
                origin=Origin.AUGMENTED if job.aug_index else Origin.ORIGINAL,
                source_row=job.row,
                aug_index=job.aug_index,
                checksum=checksum_bytes(data),
            )

        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="ImageWorker") as pool:
            fold_records = list(pool.map(render, jobs))
        records.extend(fold_records)
        logger.info(
            f"fold {fold}: {len(train_rows)} train rows x {1 + k} images, "
            f"{len(test_rows)} test originals"
        )

    header = ManifestHeader(
        layout=layout.to_dict(),
        augment=aug_cfg.model_dump(mode="json"),
        split=plan.to_dict(),
        seeds={
            "split_seed": plan.seed,
            "augment_seed": aug_cfg.seed,
            "palette_seed": layout.palette_seed,
        },
        normalization_scope=scope,
        normalization=normalization,
        schema_digest=schema_digest,
        n_rows=table.n,
        feature_names=list(table.feature_names),
        class_names=list(table.class_names),
        effective_k=k,
        augmentation_skipped=skipped,
    )
    manifest = DatasetManifest(header=header, records=records)
    write_manifest(manifest, out_dir / PipelineConstants.MANIFEST_FILENAME)
    return manifest


def build_scales(
    table: ExpandedTable,
    plan: SplitPlan,
    layout: LayoutSpec,
    aug_cfg: AugmentConfig,
    out_dir: PathLike,
    scales: Iterable[int] = range(AugmentConstants.SCALE_K + 1),
    **kwargs,
) -> Dict[int, DatasetManifest]:
    """One dataset per augmentation scale K, under `out_dir/A{K}`."""
    out_dir = Path(out_dir)
    manifests = {}
    for k in scales:
        logger.info(f"building augmentation scale A{k}")
        manifests[k] = build_dataset(
            table, plan, layout, aug_cfg.model_copy(update={"k": k}), out_dir / f"A{k}", **kwargs
        )
    return manifests


def _fold_jobs(
    fold: int,
    train_rows: np.ndarray,
    test_rows: np.ndarray,
    labels: np.ndarray,
    k: int,
) -> List[_ImageJob]:
    jobs = [
        _ImageJob(fold, Split.TRAIN, int(row), aug, int(labels[row]))
        for row in train_rows
        for aug in range(k + 1)
    ]
    jobs += [_ImageJob(fold, Split.TEST, int(row), 0, int(labels[row])) for row in test_rows]
    return jobs


def _prepare_out_dir(out_dir: Path, overwrite: bool) -> None:
    manifest_file = out_dir / PipelineConstants.MANIFEST_FILENAME
    owned = []
    if out_dir.is_dir():
        owned = [p for p in out_dir.iterdir() if p.is_dir() and p.name.isdigit()]
    if not manifest_file.exists() and not owned:
        return
    if not overwrite:
        raise DatasetIOError(
            "output directory already holds a dataset (pass overwrite to replace it)",
            path=str(out_dir),
        )
    logger.info(f"removing previous dataset in {out_dir}")
    for path in owned:
        shutil.rmtree(path)
    manifest_file.unlink(missing_ok=True)


def encode_table(
    table: ExpandedTable,
    layout: LayoutSpec,
    out_dir: PathLike,
    workers: int = 1,
    schema_digest: Optional[str] = None,
    overwrite: bool = False,
) -> DatasetManifest:
    """Encode every row once, normalized over the whole table, as `{row:06}.png`."""
    out_dir = Path(out_dir)
    if layout.m != table.m:
        raise ValidationError(f"layout is for {layout.m} features, table has {table.m}")
    if out_dir.is_dir() and (out_dir / PipelineConstants.MANIFEST_FILENAME).exists():
        if not overwrite:
            raise DatasetIOError(
                "output directory already holds an encoded table (pass overwrite to replace it)",
                path=str(out_dir),
            )
        for stale in out_dir.glob("[0-9]*.png"):
            stale.unlink()

    scope = NormalizationScope.WHOLE_DATASET
    stats = fit_normalization(table.values, np.arange(table.n), scope)
    values = apply_normalization(table.values, stats)

    def render(row: int) -> ManifestRecord:
        relative = f"{row:06d}.png"
        data = write_png(rasterize(values[row], layout), out_dir / relative)
        return ManifestRecord(
            image_path=relative,
            label=int(table.labels[row]),
            fold=0,
            split=Split.ALL,
            origin=Origin.ORIGINAL,
            source_row=row,
            aug_index=0,
            checksum=checksum_bytes(data),
        )

    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="ImageWorker") as pool:
        records = list(pool.map(render, range(table.n)))

    header = ManifestHeader(
        layout=layout.to_dict(),
        augment={},
        split={},
        seeds={"palette_seed": layout.palette_seed},
        normalization_scope=scope,
        normalization={"all": stats.to_dict()},
        schema_digest=schema_digest,
        n_rows=table.n,
        feature_names=list(table.feature_names),
        class_names=list(table.class_names),
        effective_k=0,
    )
    manifest = DatasetManifest(header=header, records=records)
    write_manifest(manifest, out_dir / PipelineConstants.MANIFEST_FILENAME)
    logger.info(f"encoded {table.n} rows into {out_dir}")
    return manifest


def preview_augmentations(
    table: ExpandedTable,
    row: int,
    layout: LayoutSpec,
    aug_cfg: AugmentConfig,
    count: int,
    out_dir: PathLike,
) -> List[Path]:
    """Write one row's original, `count` augmentations and a side-by-side strip.

    Augmentation i uses the same stream the builder uses for (row, i).
    """
    if not 0 <= row < table.n:
        raise ValidationError(f"row must be in 0..{table.n - 1}, got {row}")
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    out_dir = Path(out_dir)
    stats = fit_normalization(table.values, np.arange(table.n), NormalizationScope.WHOLE_DATASET)
    original = rasterize(apply_normalization(table.values, stats)[row], layout)
    root = RngStream(seed=aug_cfg.seed)

    canvases = [original] + [
        augment_image(original, aug_cfg, root.child(row, aug)) for aug in range(1, count + 1)
    ]
    paths = []
    for aug, canvas in enumerate(canvases):
        path = out_dir / f"{row:06d}_{aug:02d}.png"
        write_png(canvas, path)
        paths.append(path)

    strip = ImageCanvas(pixels=np.concatenate([c.pixels for c in canvases], axis=1))
    strip_path = out_dir / f"{row:06d}_preview.png"
    write_png(strip, strip_path)
    paths.append(strip_path)
    return paths
