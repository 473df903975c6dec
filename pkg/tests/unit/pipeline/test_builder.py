"""Tests for dataset builds."""

import numpy as np
import pytest

from tabimage.augmentation import AugmentConfig
from tabimage.common.exceptions import DatasetIOError, ValidationError
from tabimage.core.types import NormalizationScope, Origin, Split
from tabimage.encoding import make_layout, read_png
from tabimage.pipeline import (
    SplitPlan,
    build_dataset,
    build_scales,
    encode_table,
    make_splits,
    preview_augmentations,
    read_manifest,
    verify_no_leakage,
)


class TestBuildDatasetHappyPath:
    """A small three-fold build with one augmentation per training row."""

    def test_record_counts(self, small_build):
        """Each fold holds 20 train rows x 2 images plus 10 test originals."""
        *_, manifest = small_build

        assert len(manifest.records) == 3 * (20 * 2 + 10)
        assert manifest.header.effective_k == 1
        assert not manifest.header.augmentation_skipped

    def test_files_written(self, small_build):
        """Every record's image exists and has the layout's size."""
        _, _, layout, _, out_dir, manifest = small_build
        img = read_png(out_dir / manifest.records[0].image_path)

        assert all((out_dir / r.image_path).is_file() for r in manifest.records)
        assert (img.width, img.height) == (layout.width, layout.height)

    def test_test_split_has_originals_only(self, small_build):
        """Test images are never augmented."""
        *_, manifest = small_build

        assert {r.origin for r in manifest.select(split=Split.TEST)} == {Origin.ORIGINAL}
        assert {r.aug_index for r in manifest.select(split=Split.TEST)} == {0}

    def test_augmented_differs_from_original(self, small_build):
        """Augmented copies are not byte copies of their originals."""
        *_, manifest = small_build
        originals = {
            (r.fold, r.source_row): r.checksum
            for r in manifest.select(split=Split.TRAIN, origin=Origin.ORIGINAL)
        }
        augmented = manifest.select(split=Split.TRAIN, origin=Origin.AUGMENTED)
        same = sum(originals[(r.fold, r.source_row)] == r.checksum for r in augmented)

        assert same < len(augmented)

    def test_normalization_per_fold(self, small_build):
        """train_only statistics are recorded for every fold."""
        *_, manifest = small_build
        stats = manifest.header.normalization

        assert sorted(stats) == ["0", "1", "2"]
        assert all(s["scope"] == "train_only" for s in stats.values())
        assert not stats["0"] == stats["1"] == stats["2"]

    def test_whole_dataset_scope(self, tmp_path, generator):
        """whole_dataset statistics are shared by every fold."""
        table = generator.separable(n=30, m=4, n_classes=2)
        plan = make_splits(table, k=3, seed=3)
        manifest = build_dataset(
            table, plan, make_layout(4, width=32, height=16), AugmentConfig(k=0),
            tmp_path / "ds", scope=NormalizationScope.WHOLE_DATASET,
        )
        stats = manifest.header.normalization

        assert stats["0"] == stats["1"] == stats["2"]
        assert stats["0"]["scope"] == "whole_dataset"

    def test_manifest_on_disk(self, small_build):
        """The returned manifest matches manifest.jsonl."""
        *_, out_dir, manifest = small_build

        assert read_manifest(out_dir / "manifest.jsonl") == manifest

    def test_header_records_seeds(self, small_build):
        """Seeds needed for replay are recorded."""
        _, plan, _, cfg, _, manifest = small_build

        assert manifest.header.seeds == {"split_seed": 3, "augment_seed": 11, "palette_seed": 0}
        assert manifest.header.augment["k"] == cfg.k
        assert manifest.header.split["k"] == plan.k

    def test_holdout_plan_builds_one_fold(self, tmp_path, generator):
        """A holdout plan yields fold 0 only."""
        table = generator.separable(n=10, m=3, n_classes=2)
        plan = SplitPlan.from_test_mask(np.arange(10) < 3)
        manifest = build_dataset(
            table, plan, make_layout(3, width=30, height=10), AugmentConfig(k=2), tmp_path / "ds"
        )

        assert manifest.folds == [0]
        assert len(manifest.select(split=Split.TEST)) == 3
        assert len(manifest.select(split=Split.TRAIN)) == 7 * 3


class TestBuildGate:
    """Large tables skip augmentation."""

    def test_gate_forces_k_zero(self, tmp_path, generator):
        """n >= augment_max_rows builds originals only and flags it."""
        table = generator.separable(n=20, m=3, n_classes=2)
        plan = make_splits(table, k=2, seed=1)
        manifest = build_dataset(
            table, plan, make_layout(3, width=30, height=10), AugmentConfig(k=3),
            tmp_path / "ds", augment_max_rows=20,
        )

        assert manifest.header.augmentation_skipped
        assert manifest.header.effective_k == 0
        assert manifest.select(origin=Origin.AUGMENTED) == []

    def test_gate_disabled(self, tmp_path, generator):
        """augment_max_rows=None always augments."""
        table = generator.separable(n=20, m=3, n_classes=2)
        plan = make_splits(table, k=2, seed=1)
        manifest = build_dataset(
            table, plan, make_layout(3, width=30, height=10), AugmentConfig(k=1),
            tmp_path / "ds", augment_max_rows=None,
        )

        assert manifest.header.effective_k == 1


class TestBuildDatasetErrors:
    """Builds that must not run."""

    def test_refuses_existing_dataset(self, small_build):
        """A second build into the same directory needs overwrite."""
        table, plan, layout, cfg, out_dir, _ = small_build
        with pytest.raises(DatasetIOError):
            build_dataset(table, plan, layout, cfg, out_dir)

    def test_overwrite_replaces(self, small_build):
        """overwrite=True rebuilds identical files."""
        table, plan, layout, cfg, out_dir, manifest = small_build
        rebuilt = build_dataset(table, plan, layout, cfg, out_dir, overwrite=True)

        assert rebuilt == manifest

    def test_plan_size_mismatch(self, tmp_path, generator):
        """The plan must cover the table's rows."""
        table = generator.separable(n=20, m=3, n_classes=2)
        other = generator.separable(n=10, m=3, n_classes=2)
        with pytest.raises(ValidationError):
            build_dataset(
                table, make_splits(other, k=2), make_layout(3), AugmentConfig(), tmp_path / "ds"
            )

    def test_layout_mismatch(self, tmp_path, generator):
        """The layout must match m."""
        table = generator.separable(n=20, m=3, n_classes=2)
        with pytest.raises(ValidationError):
            build_dataset(
                table, make_splits(table, k=2), make_layout(4), AugmentConfig(), tmp_path / "ds"
            )


class TestBuildScales:
    """One dataset per augmentation scale."""

    def test_scales_share_test_images(self, tmp_path, generator):
        """Test images are byte-identical across scales."""
        table = generator.separable(n=24, m=3, n_classes=2)
        plan = make_splits(table, k=3, seed=2)
        manifests = build_scales(
            table, plan, make_layout(3, width=30, height=12), AugmentConfig(seed=4),
            tmp_path, scales=[0, 2],
        )

        assert sorted(manifests) == [0, 2]
        assert (tmp_path / "A2" / "manifest.jsonl").is_file()
        assert len(manifests[2].records) == 3 * (16 * 3 + 8)
        report = verify_no_leakage(manifests[2], tmp_path / "A2", reference=manifests[0])
        assert report.passed, report.failures


class TestEncodeTable:
    """Plain encoding without folds."""

    def test_one_image_per_row(self, tmp_path, generator):
        """Every row becomes {row:06}.png with split 'all'."""
        table = generator.separable(n=12, m=5, n_classes=3)
        manifest = encode_table(table, make_layout(5, width=40, height=20), tmp_path / "enc")

        assert [r.image_path for r in manifest.records][:2] == ["000000.png", "000001.png"]
        assert {r.split for r in manifest.records} == {Split.ALL}
        assert (tmp_path / "enc" / "000011.png").is_file()
        assert manifest.header.normalization["all"]["scope"] == "whole_dataset"

    def test_refuses_existing(self, tmp_path, generator):
        """Re-encoding into the same directory needs overwrite."""
        table = generator.separable(n=6, m=2, n_classes=2)
        layout = make_layout(2, width=20, height=10)
        encode_table(table, layout, tmp_path / "enc")
        with pytest.raises(DatasetIOError):
            encode_table(table, layout, tmp_path / "enc")
        encode_table(table, layout, tmp_path / "enc", overwrite=True)


class TestPreviewAugmentations:
    """Augmentation previews for a single row."""

    def test_writes_originals_augmentations_and_strip(self, tmp_path, generator):
        """count augmentations plus the original and a side-by-side strip."""
        table = generator.separable(n=8, m=4, n_classes=2)
        layout = make_layout(4, width=40, height=20)
        paths = preview_augmentations(table, 2, layout, AugmentConfig(), 3, tmp_path)

        assert [p.name for p in paths] == [
            "000002_00.png", "000002_01.png", "000002_02.png", "000002_03.png",
            "000002_preview.png",
        ]
        assert read_png(paths[-1]).width == 4 * 40

    def test_row_out_of_range(self, tmp_path, generator):
        """The row must exist."""
        table = generator.separable(n=8, m=4, n_classes=2)
        with pytest.raises(ValidationError):
            preview_augmentations(table, 8, make_layout(4), AugmentConfig(), 1, tmp_path)
