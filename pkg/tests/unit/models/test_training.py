"""Tests for probe training on built datasets."""

import numpy as np
import pytest

from tabimage.common.exceptions import ProbeError
from tabimage.core.types import Representation
from tabimage.encoding import ImageCanvas
from tabimage.models.probe import (
    ProbeConfig,
    downsample,
    evaluate_probe,
    raw_feature_probe,
    train_probe,
)


class TestDownsample:
    """Box averaging."""

    def test_white_image(self):
        """A white image averages to ones."""
        img = ImageCanvas(pixels=np.full((30, 40, 3), 255, dtype=np.uint8))
        vector = downsample(img, 5)

        assert vector.shape == (75,)
        np.testing.assert_allclose(vector, 1.0)

    def test_box_means(self):
        """Each output cell is the mean of its box."""
        pixels = np.zeros((4, 4, 3), dtype=np.uint8)
        pixels[:2, :2] = 255
        vector = downsample(ImageCanvas(pixels=pixels), 2).reshape(2, 2, 3)

        np.testing.assert_allclose(vector[..., 0], [[1.0, 0.0], [0.0, 0.0]])

    def test_side_too_large(self):
        """The grid cannot be finer than the image."""
        img = ImageCanvas(pixels=np.zeros((4, 4, 3), dtype=np.uint8))
        with pytest.raises(ProbeError):
            downsample(img, 8)


class TestTrainProbe:
    """Probe over the small three-fold build."""

    def test_decoded_features(self, small_build):
        """Decoded features separate the classes on a held-out fold."""
        *_, out_dir, manifest = small_build
        cfg = ProbeConfig(epochs=50)
        model = train_probe(manifest, out_dir, 0, cfg)
        metrics = evaluate_probe(model, manifest, out_dir, 0)

        assert model.regression.weights.shape == (4, 2)
        assert metrics.n_samples == 10
        assert metrics.fold == 0
        assert metrics.macro_f1 >= 0.8

    def test_downsampled_pixels(self, small_build):
        """The pixel representation trains on side x side x 3 inputs."""
        *_, out_dir, manifest = small_build
        cfg = ProbeConfig(representation=Representation.PIXELS_DOWNSAMPLED, downsample_side=8,
                          epochs=20)
        model = train_probe(manifest, out_dir, 1, cfg, workers=2)

        assert model.regression.weights.shape == (8 * 8 * 3, 2)
        assert 0.0 <= evaluate_probe(model, manifest, out_dir, 1).auc <= 1.0

    def test_originals_only(self, small_build):
        """Excluding augmented images still trains a model."""
        *_, out_dir, manifest = small_build
        model = train_probe(manifest, out_dir, 2, ProbeConfig(epochs=5, include_augmented=False))

        assert len(model.history) == 5

    def test_raw_feature_probe(self, small_build):
        """The raw-feature baseline scores the same fold."""
        table, *_, manifest = small_build
        metrics = raw_feature_probe(table, manifest, 0, ProbeConfig(epochs=50))

        assert metrics.n_samples == 10
        assert metrics.macro_f1 >= 0.8

    def test_unknown_fold(self, small_build):
        """A fold without images is an error."""
        *_, out_dir, manifest = small_build
        with pytest.raises(ProbeError):
            train_probe(manifest, out_dir, 7, ProbeConfig(epochs=1))
