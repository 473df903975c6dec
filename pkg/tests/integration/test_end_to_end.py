"""Integration tests for tabimage.

End-to-end builds from a table to a verified image dataset.
"""

import io

import numpy as np
import pytest

from tabimage.augmentation import AugmentConfig
from tabimage.core.types import Origin, Split
from tabimage.data.generators import SyntheticTableGenerator
from tabimage.data.ingest import expand_features, parse_table
from tabimage.encoding import make_layout, read_png
from tabimage.pipeline import (
    build_dataset,
    build_scales,
    make_splits,
    read_manifest,
    verify_no_leakage,
)
from tabimage.verification import decode


@pytest.fixture(scope="module")
def table():
    return SyntheticTableGenerator(seed=101).separable(n=200, m=9, n_classes=2)


@pytest.mark.integration
@pytest.mark.slow
class TestFoldArithmetic:
    """Image counts for n=200, five folds and K=4."""

    @pytest.fixture(scope="class")
    def build(self, table, tmp_path_factory):
        out_dir = tmp_path_factory.mktemp("arith")
        plan = make_splits(table, k=5, seed=42)
        layout = make_layout(9, width=72, height=24)
        manifest = build_dataset(table, plan, layout, AugmentConfig(k=4), out_dir, workers=4)
        return out_dir, manifest

    def test_counts_per_fold(self, build):
        """Each fold has 160 x 5 training images and 40 test images."""
        _, manifest = build

        for fold in range(5):
            assert len(manifest.select(fold, Split.TRAIN)) == 160 * 5
            assert len(manifest.select(fold, Split.TRAIN, Origin.AUGMENTED)) == 160 * 4
            assert len(manifest.select(fold, Split.TEST)) == 40

    def test_no_leakage(self, build):
        """The build passes every leakage check."""
        out_dir, manifest = build

        assert verify_no_leakage(manifest, out_dir).passed

    def test_clean_images_decode(self, table, build):
        """Original training images decode back to their normalized rows."""
        out_dir, manifest = build
        layout = make_layout(9, width=72, height=24)
        stats = manifest.header.normalization["0"]
        low, high = np.asarray(stats["min"]), np.asarray(stats["max"])
        record = manifest.select(0, Split.TRAIN, Origin.ORIGINAL)[0]

        decoded = decode(read_png(out_dir / record.image_path), layout).values
        expected = np.clip((table.values[record.source_row] - low) / (high - low), 0, 1)

        assert np.abs(decoded - expected).max() <= 1.5 / layout.bar_width


@pytest.mark.integration
@pytest.mark.slow
class TestAugmentationScales:
    """Datasets at K = 0, 2 and 4 from one split."""

    def test_test_images_identical_across_scales(self, tmp_path):
        """Every scale passes the leakage check against the K=0 build."""
        small = SyntheticTableGenerator(seed=5).separable(n=60, m=6, n_classes=3)
        plan = make_splits(small, k=3, seed=8)
        manifests = build_scales(
            small, plan, make_layout(6, width=48, height=24), AugmentConfig(seed=3),
            tmp_path, scales=[0, 2, 4], workers=2,
        )

        for k in (0, 2, 4):
            report = verify_no_leakage(manifests[k], tmp_path / f"A{k}", reference=manifests[0])
            assert report.passed, report.failures
            assert manifests[k].header.effective_k == k
            assert len(manifests[k].select(split=Split.TRAIN)) == 3 * 40 * (1 + k)


@pytest.mark.integration
class TestDeterminism:
    """Builds are a pure function of table, configuration and seeds."""

    def test_worker_count_does_not_matter(self, tmp_path):
        """Serial and four-worker builds produce identical bytes."""
        small = SyntheticTableGenerator(seed=12).separable(n=40, m=5, n_classes=2)
        plan = make_splits(small, k=4, seed=1)
        layout = make_layout(5, rows=2, width=40, height=30)
        cfg = AugmentConfig(k=3, seed=77)

        serial = build_dataset(small, plan, layout, cfg, tmp_path / "serial", workers=1)
        pooled = build_dataset(small, plan, layout, cfg, tmp_path / "pooled", workers=4)

        assert serial == pooled
        assert (tmp_path / "serial" / "manifest.jsonl").read_bytes() == (
            tmp_path / "pooled" / "manifest.jsonl"
        ).read_bytes()
        for record in serial.records:
            assert (tmp_path / "serial" / record.image_path).read_bytes() == (
                tmp_path / "pooled" / record.image_path
            ).read_bytes()

    def test_from_text_to_manifest(self, tmp_path):
        """A mixed-type CSV builds and reads back."""
        dataset = SyntheticTableGenerator(seed=3).mixed(n=30, n_numeric=3)
        raw = parse_table(io.BytesIO(dataset.csv_text.encode("utf-8")))
        table = expand_features(raw, dataset.schema)
        plan = make_splits(table, k=3, seed=0)
        layout = make_layout(table.m, rows=2, width=40, height=20)

        manifest = build_dataset(
            table, plan, layout, AugmentConfig(k=1), tmp_path / "mixed",
            schema_digest=dataset.schema.compute_hash(),
        )

        assert table.m == 3 + 1 + 4 + 1
        assert read_manifest(tmp_path / "mixed" / "manifest.jsonl") == manifest
        assert manifest.header.schema_digest == dataset.schema.compute_hash()
