"""Flat grayscale morphology applied per RGB channel.

Convention on a light background: dilation (channel-wise max) grows the
bright background into the bars, erosion (channel-wise min) grows the bars.
Borders reflect.
"""

from typing import Tuple

import numpy as np
from scipy.ndimage import grey_dilation, grey_erosion

from tabimage.augmentation.rng import RngStream, Stage
from tabimage.common.exceptions import ValidationError
from tabimage.encoding.raster import ImageCanvas


def make_structuring_element(
    max_dims: Tuple[int, int],
    rng: RngStream,
    stage: Stage = Stage.SE_DILATE,
) -> np.ndarray:
    """Solid rectangle, height ~ U{1..max_h}, width ~ U{1..max_w}."""
    max_h, max_w = max_dims
    if max_h < 1 or max_w < 1:
        raise ValidationError(f"structuring element bounds must be >= 1, got {max_dims}")
    generator = rng.generator(stage)
    height = int(generator.integers(1, max_h + 1))
    width = int(generator.integers(1, max_w + 1))
    return np.ones((height, width), dtype=bool)


def dilate(img: ImageCanvas, se: np.ndarray) -> ImageCanvas:
    return _apply(grey_dilation, img, se)


def erode(img: ImageCanvas, se: np.ndarray) -> ImageCanvas:
    return _apply(grey_erosion, img, se)


def _apply(operator, img: ImageCanvas, se: np.ndarray) -> ImageCanvas:
    se = np.asarray(se, dtype=bool)
    if se.ndim != 2 or not se.any():
        raise ValidationError("structuring element must be a non-empty 2-D mask")
    if se.shape == (1, 1):
        return img.copy()
    out = np.empty_like(img.pixels)
    for channel in range(3):
        out[..., channel] = operator(img.pixels[..., channel], footprint=se, mode="reflect")
    return ImageCanvas(pixels=out)
