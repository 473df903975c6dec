"""Dataset pipeline: splits, builds, manifests and leakage checks."""

from tabimage.pipeline.builder import (
    build_dataset,
    build_scales,
    encode_table,
    preview_augmentations,
)
from tabimage.pipeline.leakage import LeakageReport, verify_no_leakage
from tabimage.pipeline.manifest import (
    DatasetManifest,
    ManifestHeader,
    ManifestRecord,
    read_manifest,
    validate_checksums,
    write_manifest,
)
from tabimage.pipeline.splits import SplitPlan, make_splits

__all__ = [
    "DatasetManifest",
    "LeakageReport",
    "ManifestHeader",
    "ManifestRecord",
    "SplitPlan",
    "build_dataset",
    "build_scales",
    "encode_table",
    "make_splits",
    "preview_augmentations",
    "read_manifest",
    "validate_checksums",
    "verify_no_leakage",
    "write_manifest",
]
