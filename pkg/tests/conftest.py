"""Shared pytest fixtures."""

import numpy as np
import pytest

from tabimage.augmentation import AugmentConfig
from tabimage.common.config import reset_settings
from tabimage.data.generators import SyntheticTableGenerator
from tabimage.encoding import make_layout
from tabimage.pipeline import build_dataset, make_splits
from tests.fixtures.tables import MIXED_CSV, MIXED_SCHEMA_YAML


@pytest.fixture(autouse=True)
def _fresh_settings():
    """Settings are re-read from the environment for every test."""
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def generator():
    return SyntheticTableGenerator(seed=7)


@pytest.fixture
def separable_table(generator):
    """200 rows, 9 features, two well-separated classes."""
    return generator.separable(n=200, m=9, n_classes=2)


@pytest.fixture
def mixed_files(tmp_path):
    """A small mixed-type CSV and its schema on disk."""
    csv_path = tmp_path / "mixed.csv"
    schema_path = tmp_path / "schema.yaml"
    csv_path.write_text(MIXED_CSV, encoding="utf-8")
    schema_path.write_text(MIXED_SCHEMA_YAML, encoding="utf-8")
    return csv_path, schema_path


@pytest.fixture
def small_build(tmp_path, generator):
    """A 3-fold, K=1 build of a 30-row table on a small canvas."""
    table = generator.separable(n=30, m=4, n_classes=2)
    plan = make_splits(table, k=3, seed=3)
    layout = make_layout(table.m, rows=1, width=48, height=32)
    cfg = AugmentConfig(k=1, seed=11)
    out_dir = tmp_path / "dataset"
    manifest = build_dataset(table, plan, layout, cfg, out_dir)
    return table, plan, layout, cfg, out_dir, manifest
