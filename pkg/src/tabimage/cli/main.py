"""tabimage command line.

Subcommands:
    encode           every row as one bar image, plus a manifest
    augment-preview  one row and N augmented variants side by side
    build            cross-validation image dataset with leakage-safe augmentation
    verify           decode round-trip report, optional leakage check of a build
    probe            linear probe per fold of a built dataset
    layout-sweep     decode fidelity and probe scores per row count

Results go to stdout as one JSON record per line; logs go to stderr.
Exit codes: 0 success, 1 failure, 2 bad configuration or missing file.
"""

import argparse
import json
import logging
import sys
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from tabimage import __version__
from tabimage.augmentation.augmenter import AugmentConfig
from tabimage.cli.run_config import RunConfig, load_run_config
from tabimage.common.config import get_settings
from tabimage.common.constants import FormatVersions, PipelineConstants
from tabimage.common.exceptions import ConfigurationError, DatasetIOError, TabImageError
from tabimage.common.logging import configure_logging
from tabimage.core.types import NormalizationScope
from tabimage.data.ingest import expand_features, fit_normalization, normalize_table, read_table
from tabimage.data.schemas import ExpandedTable, load_schema
from tabimage.encoding.layout import layout_from_dict, make_layout
from tabimage.evaluation.metrics import mean_metrics
from tabimage.evaluation.sweep import run_layout_sweep
from tabimage.models.probe.training import evaluate_probe, raw_feature_probe, train_probe
from tabimage.pipeline import (
    DatasetManifest,
    build_dataset,
    build_scales,
    encode_table,
    make_splits,
    preview_augmentations,
    read_manifest,
    verify_no_leakage,
)
from tabimage.verification.report import roundtrip_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

# Flags whose values feed RunConfig (dest names)
_CONFIG_KEYS = (
    "input", "schema_path", "out", "dataset", "width", "height", "rows", "palette_seed",
    "k", "alpha", "sigma", "p_dilate", "p_erode", "se_max", "seed", "folds",
    "paper_normalization", "representation", "workers", "epochs", "learning_rate",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tabimage", description="Render tabular data as bar images for vision models"
    )
    parser.add_argument(
        "--version",
        action="version",
        version=(
            f"tabimage {__version__} (schema v{FormatVersions.SCHEMA_VERSION}, "
            f"manifest v{FormatVersions.MANIFEST_VERSION})"
        ),
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML run configuration")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    common.add_argument("--workers", type=int, help="Worker threads for image work")
    common.add_argument("--seed", type=int, help="Root seed (splits, augmentation, probe)")

    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("--input", type=Path, help="Delimited input table")
    table.add_argument("--schema", dest="schema_path", type=Path, help="Feature schema YAML")

    layout = argparse.ArgumentParser(add_help=False)
    layout.add_argument("--width", type=int, help="Canvas width in pixels (default 224)")
    layout.add_argument("--height", type=int, help="Canvas height in pixels (default 224)")
    layout.add_argument("--rows", type=int, help="Bar rows r (default 1)")
    layout.add_argument("--palette-seed", type=int, help="Palette rotation seed")

    augment = argparse.ArgumentParser(add_help=False)
    augment.add_argument("--k", type=int, help="Augmented copies per training image")
    augment.add_argument("--alpha", type=float, help="Elastic intensity (default 50)")
    augment.add_argument("--sigma", type=float, help="Elastic smoothing (default 4)")
    augment.add_argument("--p-dilate", type=float, help="Dilation probability (default 0.7)")
    augment.add_argument("--p-erode", type=float, help="Erosion probability (default 0.7)")
    augment.add_argument("--se-max", type=_pair, help="Largest structuring element H,W (2,5)")

    split = argparse.ArgumentParser(add_help=False)
    split.add_argument("--folds", type=int, help="Cross-validation folds (default 5)")
    split.add_argument(
        "--paper-normalization",
        action="store_const",
        const=True,
        help="Fit min/max on the whole table instead of each fold's training rows",
    )

    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument(
        "--representation", choices=["decoded_features", "pixels_downsampled"]
    )
    probe.add_argument("--epochs", type=int)
    probe.add_argument("--learning-rate", type=float)

    p = subparsers.add_parser(
        "encode", parents=[common, table, layout], help="Encode every row as one image"
    )
    p.add_argument("--out", type=Path, help="Output directory")
    p.add_argument("--overwrite", action="store_true")
    p.set_defaults(handler=cmd_encode)

    p = subparsers.add_parser(
        "augment-preview",
        parents=[common, table, layout, augment],
        help="Write one row and N augmentations side by side",
    )
    p.add_argument("--out", type=Path, help="Output directory")
    p.add_argument("--row", type=int, default=0, help="0-based data row")
    p.add_argument("--count", type=int, default=4, help="Number of augmented variants")
    p.set_defaults(handler=cmd_augment_preview)

    p = subparsers.add_parser(
        "build",
        parents=[common, table, layout, augment, split],
        help="Build a cross-validation image dataset",
    )
    p.add_argument("--out", type=Path, help="Output directory")
    p.add_argument("--scales", type=_int_list, help="Build one dataset per K, e.g. 0,1,2,3,4")
    p.add_argument("--no-stratify", action="store_true", help="Plain (unstratified) k-fold")
    p.add_argument("--overwrite", action="store_true")
    p.set_defaults(handler=cmd_build)

    p = subparsers.add_parser(
        "verify",
        parents=[common, table, layout, augment, split],
        help="Round-trip report and optional leakage check",
    )
    p.add_argument("--trials", type=int, default=200, help="Augmented images to decode")
    p.add_argument("--dataset", type=Path, help="Built dataset to check for leakage")
    p.add_argument(
        "--rebuild-k", type=int, help="Rebuild the dataset with this K and compare test images"
    )
    p.add_argument(
        "--report-only",
        action="store_true",
        help="Report the augmented error gate without failing on it",
    )
    p.set_defaults(handler=cmd_verify)

    p = subparsers.add_parser(
        "probe", parents=[common, table, probe], help="Linear probe per fold of a built dataset"
    )
    p.add_argument("--dataset", type=Path, help="Built dataset directory")
    p.set_defaults(handler=cmd_probe)

    p = subparsers.add_parser(
        "layout-sweep",
        parents=[common, table, layout, augment, split, probe],
        help="Decode fidelity and probe scores per row count",
    )
    p.add_argument(
        "--rows-list", type=_int_list, default=[1, 2, 4, 8, 16], help="Row counts to sweep"
    )
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(handler=cmd_layout_sweep)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "handler", None) is None:
        parser.print_help()
        return EXIT_OK

    try:
        settings = get_settings()
        configure_logging(args.log_level or settings.log_level.value)
        overrides = {key: getattr(args, key, None) for key in _CONFIG_KEYS}
        if overrides["workers"] is None:
            overrides["workers"] = settings.workers
        cfg = load_run_config(args.config, overrides)
        return args.handler(args, cfg)
    except ConfigurationError as e:
        return _fail(e, EXIT_CONFIG)
    except DatasetIOError as e:
        return _fail(e, EXIT_CONFIG if e.missing_input else EXIT_FAILURE)
    except TabImageError as e:
        return _fail(e, EXIT_FAILURE)
    except ValueError as e:
        # malformed environment variables
        print(f"error: CONFIG_ERROR: {e}", file=sys.stderr)
        return EXIT_CONFIG


def cmd_encode(args: argparse.Namespace, cfg: RunConfig) -> int:
    table, digest = _load_table(cfg)
    out = _output_dir(cfg, "encoded")
    layout = make_layout(table.m, cfg.rows, cfg.width, cfg.height, cfg.palette_seed)
    manifest = encode_table(table, layout, out, cfg.workers, digest, args.overwrite)
    _emit({"out": str(out), "images": len(manifest.records), "layout": layout.to_dict()})
    return EXIT_OK


def cmd_augment_preview(args: argparse.Namespace, cfg: RunConfig) -> int:
    table, _ = _load_table(cfg)
    out = _output_dir(cfg, "preview")
    layout = make_layout(table.m, cfg.rows, cfg.width, cfg.height, cfg.palette_seed)
    paths = preview_augmentations(table, args.row, layout, cfg.augment_config(), args.count, out)
    _emit({"row": args.row, "files": [str(p) for p in paths]})
    return EXIT_OK


def cmd_build(args: argparse.Namespace, cfg: RunConfig) -> int:
    table, digest = _load_table(cfg)
    out = _output_dir(cfg, "dataset")
    layout = make_layout(table.m, cfg.rows, cfg.width, cfg.height, cfg.palette_seed)
    stratified = cfg.stratified and not args.no_stratify
    plan = make_splits(table, cfg.folds, cfg.seed, stratified=stratified)
    options = dict(
        scope=cfg.scope,
        workers=cfg.workers,
        augment_max_rows=cfg.augment_max_rows,
        schema_digest=digest,
        overwrite=args.overwrite,
    )
    if args.scales:
        manifests = build_scales(
            table, plan, layout, cfg.augment_config(), out, args.scales, **options
        )
        for k, manifest in manifests.items():
            _emit(_build_summary(out / f"A{k}", manifest))
    else:
        manifest = build_dataset(table, plan, layout, cfg.augment_config(), out, **options)
        _emit(_build_summary(out, manifest))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    table, digest = _load_table(cfg)
    layout = make_layout(table.m, cfg.rows, cfg.width, cfg.height, cfg.palette_seed)
    stats = fit_normalization(table.values, range(table.n), NormalizationScope.WHOLE_DATASET)
    normalized = normalize_table(table, stats)
    report = roundtrip_report(normalized, layout, cfg.augment_config(), args.trials, cfg.workers)
    for record in report.to_records():
        _emit({"record_type": "feature", **record})
    summary = {k: v for k, v in report.to_dict().items() if k != "features"}
    _emit({"record_type": "roundtrip", **summary})

    ok = report.clean_max_error <= report.clean_bound
    if not args.report_only:
        ok = ok and report.passes_gate()

    if cfg.dataset is not None:
        manifest = read_manifest(cfg.dataset / PipelineConstants.MANIFEST_FILENAME)
        reference = None
        if args.rebuild_k is not None:
            reference = _rebuild(table, digest, manifest, cfg, args.rebuild_k)
        leakage = verify_no_leakage(manifest, cfg.dataset, reference)
        _emit({"record_type": "leakage", **leakage.to_dict()})
        ok = ok and leakage.passed

    return EXIT_OK if ok else EXIT_FAILURE


def cmd_probe(args: argparse.Namespace, cfg: RunConfig) -> int:
    cfg.require("dataset")
    manifest = read_manifest(cfg.dataset / PipelineConstants.MANIFEST_FILENAME)
    probe_cfg = cfg.probe_config()
    table = None
    if cfg.input is not None and cfg.schema_path is not None:
        table = _load_table(cfg)[0]

    per_fold = []
    oracle = []
    for fold in manifest.folds:
        model = train_probe(manifest, cfg.dataset, fold, probe_cfg, cfg.workers)
        metrics = evaluate_probe(model, manifest, cfg.dataset, fold, cfg.workers)
        per_fold.append(metrics)
        record: Dict[str, Any] = {"record_type": "fold", **metrics.to_dict()}
        if table is not None:
            raw = raw_feature_probe(table, manifest, fold, probe_cfg)
            oracle.append(raw)
            record["raw_macro_f1"] = raw.macro_f1
            record["raw_auc"] = raw.auc
        _emit(record)

    summary: Dict[str, Any] = {"record_type": "mean", **mean_metrics(per_fold).to_dict()}
    if oracle:
        summary["raw_macro_f1"] = mean_metrics(oracle).macro_f1
        summary["raw_auc"] = mean_metrics(oracle).auc
    summary["representation"] = probe_cfg.representation.value
    _emit(summary)
    return EXIT_OK


def cmd_layout_sweep(args: argparse.Namespace, cfg: RunConfig) -> int:
    table, _ = _load_table(cfg)
    plan = make_splits(table, cfg.folds, cfg.seed)
    rows = run_layout_sweep(
        table,
        args.rows_list,
        cfg.augment_config(),
        n_trials=args.trials,
        plan=plan,
        probe_cfg=cfg.probe_config(),
        width=cfg.width,
        height=cfg.height,
        workers=cfg.workers,
    )
    for row in rows:
        _emit({"record_type": "layout", **row.to_dict()})
    return EXIT_OK


def _load_table(cfg: RunConfig) -> Tuple[ExpandedTable, str]:
    cfg.require("input", "schema_path")
    schema = load_schema(cfg.schema_path)
    table = expand_features(read_table(cfg.input), schema)
    logger.info(f"loaded {table.n} rows x {table.m} features from {cfg.input}")
    return table, schema.compute_hash()


def _rebuild(
    table: ExpandedTable, digest: str, manifest: DatasetManifest, cfg: RunConfig, k: int
) -> DatasetManifest:
    """Rebuild `manifest`'s dataset with K=k in a scratch directory."""
    header = manifest.header
    if header.split.get("holdout") or "k" not in header.split:
        raise ConfigurationError("--rebuild-k needs a dataset built from k-fold splits")
    plan = make_splits(
        table,
        int(header.split["k"]),
        int(header.seeds["split_seed"]),
        stratified=bool(header.split["stratified"]),
    )
    aug_cfg = AugmentConfig.model_validate({**header.augment, "k": k})
    with tempfile.TemporaryDirectory(prefix="tabimage-rebuild-") as scratch:
        return build_dataset(
            table,
            plan,
            layout_from_dict(header.layout),
            aug_cfg,
            Path(scratch),
            scope=header.normalization_scope,
            workers=cfg.workers,
            augment_max_rows=None,
            schema_digest=digest,
        )


def _build_summary(out: Path, manifest: DatasetManifest) -> Dict[str, Any]:
    counts = manifest.summary()
    return {
        "record_type": "build",
        "out": str(out),
        "effective_k": manifest.header.effective_k,
        "augmentation_skipped": manifest.header.augmentation_skipped,
        "folds": counts,
        "images": len(manifest.records),
    }


def _output_dir(cfg: RunConfig, name: str) -> Path:
    return cfg.out if cfg.out is not None else get_settings().output_root / name


def _emit(record: Dict[str, Any]) -> None:
    print(json.dumps(record, sort_keys=True, default=str))


def _fail(error: TabImageError, code: int) -> int:
    print(f"error: {error.code}: {error.message}", file=sys.stderr)
    return code


def _pair(text: str) -> Tuple[int, int]:
    parts = _int_list(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected H,W, got {text!r}")
    return parts[0], parts[1]


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


if __name__ == "__main__":
    sys.exit(main())
