"""Dataset manifest: one JSON header line followed by one line per image.

    {"record_type": "header", "manifest_version": 1, "layout": {...}, ...}
    {"record_type": "image", "image_path": "0/train/000012_01.png", ...}

Keys are sorted and no timestamps are written, so identical builds produce
identical manifests.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError as PydanticValidationError

from tabimage.common.constants import FormatVersions, PipelineConstants
from tabimage.common.exceptions import DatasetIOError, ManifestError
from tabimage.core.types import NormalizationScope, Origin, Split

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class ManifestHeader(BaseModel):
    """Everything needed to replay a build exactly."""
    record_type: Literal["header"] = "header"
    manifest_version: int = FormatVersions.MANIFEST_VERSION
    schema_version: int = FormatVersions.SCHEMA_VERSION
    layout: Dict[str, Any]
    augment: Dict[str, Any]
    split: Dict[str, Any]
    seeds: Dict[str, int]
    normalization_scope: NormalizationScope
    normalization: Dict[str, Dict[str, Any]] = Field(default_factory=dict)
    schema_digest: Optional[str] = None
    n_rows: int = Field(..., ge=1)
    feature_names: List[str] = Field(default_factory=list)
    class_names: List[str] = Field(default_factory=list)
    effective_k: int = Field(..., ge=0)
    augmentation_skipped: bool = False


class ManifestRecord(BaseModel):
    """One emitted image."""
    record_type: Literal["image"] = "image"
    image_path: str
    label: int = Field(..., ge=1)
    fold: int = Field(..., ge=0)
    split: Split
    origin: Origin
    source_row: int = Field(..., ge=0)
    aug_index: int = Field(..., ge=0)
    checksum: str

    model_config = {"frozen": True}


class DatasetManifest(BaseModel):
    header: ManifestHeader
    records: List[ManifestRecord] = Field(default_factory=list)

    def select(
        self,
        fold: Optional[int] = None,
        split: Optional[Split] = None,
        origin: Optional[Origin] = None,
    ) -> List[ManifestRecord]:
        return [
            r for r in self.records
            if (fold is None or r.fold == fold)
            and (split is None or r.split == split)
            and (origin is None or r.origin == origin)
        ]

    @property
    def folds(self) -> List[int]:
        return sorted({r.fold for r in self.records})

    def summary(self) -> Dict[str, Dict[str, int]]:
        """Image counts per fold: train originals, train augmented, test."""
        counts: Dict[str, Dict[str, int]] = {}
        for fold in self.folds:
            counts[str(fold)] = {
                "train_original": len(self.select(fold, Split.TRAIN, Origin.ORIGINAL)),
                "train_augmented": len(self.select(fold, Split.TRAIN, Origin.AUGMENTED)),
                "test": len(self.select(fold, Split.TEST)),
            }
        return counts


def image_path(fold: int, split: Split, row: int, aug_index: int) -> str:
    """Relative path `{fold}/{split}/{row:06}_{aug:02}.png`."""
    return f"{fold}/{split.value}/{row:06d}_{aug_index:02d}.png"


def checksum_bytes(data: bytes) -> str:
    return hashlib.new(PipelineConstants.HASH_ALGORITHM, data).hexdigest()


def checksum_file(path: PathLike) -> str:
    try:
        return checksum_bytes(Path(path).read_bytes())
    except OSError as e:
        raise DatasetIOError(f"cannot read file for checksum: {e}", path=str(path)) from e


def write_manifest(manifest: DatasetManifest, path: PathLike) -> None:
    path = Path(path)
    lines = [_dump(manifest.header)] + [_dump(r) for r in manifest.records]
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise DatasetIOError(f"cannot write manifest: {e}", path=str(path)) from e
    logger.info(f"wrote manifest {path} ({len(manifest.records)} records)")


def read_manifest(path: PathLike) -> DatasetManifest:
    """Parse a manifest file.

    Raises:
        DatasetIOError: the file is missing or unreadable.
        ManifestError: bad JSON, a missing/duplicate header, a wrong version or
            an invalid record.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise DatasetIOError(
            f"manifest not found: {path}", path=str(path), missing_input=True
        ) from e
    except OSError as e:
        raise DatasetIOError(f"cannot read manifest: {e}", path=str(path)) from e

    header: Optional[ManifestHeader] = None
    records: List[ManifestRecord] = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise ManifestError(f"line {number} is not valid JSON: {e}") from e
        kind = data.get("record_type") if isinstance(data, dict) else None
        try:
            if kind == "header":
                if header is not None:
                    raise ManifestError(f"line {number}: duplicate header record")
                header = ManifestHeader.model_validate(data)
            elif kind == "image":
                records.append(ManifestRecord.model_validate(data))
            else:
                raise ManifestError(f"line {number}: unknown record_type {kind!r}")
        except PydanticValidationError as e:
            raise ManifestError(f"line {number}: invalid {kind} record: {e}") from e

    if header is None:
        raise ManifestError(f"manifest {path} has no header record")
    if header.manifest_version != FormatVersions.MANIFEST_VERSION:
        raise ManifestError(
            f"unsupported manifest_version {header.manifest_version} "
            f"(expected {FormatVersions.MANIFEST_VERSION})"
        )
    return DatasetManifest(header=header, records=records)


def validate_checksums(manifest: DatasetManifest, root: PathLike) -> List[str]:
    """Image paths whose file is missing or whose digest differs from the record."""
    root = Path(root)
    mismatches = []
    for record in manifest.records:
        path = root / record.image_path
        if not path.is_file():
            mismatches.append(f"{record.image_path}: missing")
        elif checksum_file(path) != record.checksum:
            mismatches.append(f"{record.image_path}: checksum mismatch")
    return mismatches


def _dump(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
