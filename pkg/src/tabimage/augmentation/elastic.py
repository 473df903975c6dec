"""Elastic distortion: smooth random displacement plus bilinear resampling."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.ndimage import gaussian_filter, map_coordinates

from tabimage.augmentation.rng import RngStream, Stage
from tabimage.common.constants import AugmentConstants
from tabimage.common.exceptions import ValidationError
from tabimage.encoding.raster import ImageCanvas


@dataclass(frozen=True)
class DisplacementField:
    """Per-pixel offsets in pixels; output (y, x) samples input (y + dy, x + dx)."""
    dx: np.ndarray
    dy: np.ndarray

    def __post_init__(self):
        if self.dx.shape != self.dy.shape or self.dx.ndim != 2:
            raise ValidationError("displacement components must be equal-shape 2-D grids")
        if not (np.all(np.isfinite(self.dx)) and np.all(np.isfinite(self.dy))):
            raise ValidationError("displacement field must be finite")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.dx.shape


def make_displacement_field(
    shape: Tuple[int, int],
    alpha: float,
    sigma: float,
    generator: np.random.Generator,
) -> DisplacementField:
    """Uniform [-1, 1] noise per axis, Gaussian-smoothed, scaled by alpha.

    The kernel is truncated at radius ceil(3 * sigma) and renormalized.
    """
    _check_params(alpha, sigma)
    radius = math.ceil(AugmentConstants.KERNEL_TRUNCATE_SIGMAS * sigma)
    truncate = radius / sigma

    noise_x = generator.uniform(-1.0, 1.0, size=shape)
    noise_y = generator.uniform(-1.0, 1.0, size=shape)
    dx = gaussian_filter(noise_x, sigma, mode="reflect", truncate=truncate) * alpha
    dy = gaussian_filter(noise_y, sigma, mode="reflect", truncate=truncate) * alpha
    return DisplacementField(dx=dx, dy=dy)


def warp(img: ImageCanvas, field: DisplacementField) -> ImageCanvas:
    """Resample every channel at the displaced coordinates (bilinear, reflect)."""
    if field.shape != (img.height, img.width):
        raise ValidationError(
            f"field shape {field.shape} does not match image {(img.height, img.width)}"
        )
    ys, xs = np.meshgrid(np.arange(img.height), np.arange(img.width), indexing="ij")
    coords = np.stack([ys + field.dy, xs + field.dx])

    out = np.empty_like(img.pixels)
    source = img.pixels.astype(np.float64)
    for channel in range(3):
        sampled = map_coordinates(source[..., channel], coords, order=1, mode="reflect")
        out[..., channel] = np.clip(np.rint(sampled), 0, 255).astype(np.uint8)
    return ImageCanvas(pixels=out)


def elastic_distort(
    img: ImageCanvas,
    alpha: float,
    sigma: float,
    rng: RngStream,
) -> ImageCanvas:
    """Elastic warp of `img`; alpha=0 returns an exact copy."""
    _check_params(alpha, sigma)
    if alpha == 0:
        return img.copy()
    field = make_displacement_field(
        (img.height, img.width), alpha, sigma, rng.generator(Stage.ELASTIC)
    )
    return warp(img, field)


def _check_params(alpha: float, sigma: float) -> None:
    if alpha < 0:
        raise ValidationError(f"alpha must be >= 0, got {alpha}")
    if sigma <= 0:
        raise ValidationError(f"sigma must be > 0, got {sigma}")
