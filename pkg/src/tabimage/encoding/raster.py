"""Rasterization of one normalized sample into a bar image."""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from tabimage.common.exceptions import ValidationError
from tabimage.encoding.layout import LayoutSpec


@dataclass(frozen=True)
class BarPlacement:
    """Where feature j's bar goes and how wide it is (real pixels)."""
    feature: int
    row: int
    column: int
    x_start: float
    y_start: float
    width: float
    height: float


@dataclass
class ImageCanvas:
    """H×W RGB pixel buffer, 8 bits per channel."""
    pixels: np.ndarray

    def __post_init__(self):
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 3:
            raise ValidationError(f"canvas must be H×W×3, got shape {self.pixels.shape}")
        if self.pixels.dtype != np.uint8:
            raise ValidationError(f"canvas must be uint8, got {self.pixels.dtype}")

    @classmethod
    def blank(cls, width: int, height: int, background: Sequence[int]) -> "ImageCanvas":
        pixels = np.empty((height, width, 3), dtype=np.uint8)
        pixels[...] = np.asarray(background, dtype=np.uint8)
        return cls(pixels=pixels)

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    def copy(self) -> "ImageCanvas":
        return ImageCanvas(pixels=self.pixels.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageCanvas):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )


def place_bars(sample: Sequence[float], layout: LayoutSpec) -> List[BarPlacement]:
    """Bar placements for one sample, following the row/column index formulas."""
    values = _check_sample(sample, layout)
    placements = []
    for j in range(1, layout.m + 1):
        row, column = layout.cell_index(j)
        placements.append(BarPlacement(
            feature=j,
            row=row,
            column=column,
            x_start=(column - 1) * layout.bar_width,
            y_start=(row - 1) * layout.bar_height,
            width=float(values[j - 1]) * layout.bar_width,
            height=layout.bar_height,
        ))
    return placements


def rasterize(sample: Sequence[float], layout: LayoutSpec) -> ImageCanvas:
    """Draw one left-anchored bar per feature on a background canvas.

    Each bar fills the fraction x_j of its cell's pixel span; the partially
    covered right-edge column is blended with the background in proportion
    to its coverage. Unused trailing cells stay background.
    """
    values = _check_sample(sample, layout)
    canvas = ImageCanvas.blank(layout.width, layout.height, layout.background)
    background = np.asarray(layout.background, dtype=np.float64)

    for j in range(1, layout.m + 1):
        left, right, top, bottom = layout.cell_pixels(j)
        span = right - left
        drawn = float(values[j - 1]) * span
        if drawn <= 0.0:
            continue
        coverage = np.clip(drawn - np.arange(span, dtype=np.float64), 0.0, 1.0)
        colour = np.asarray(layout.palette[j - 1], dtype=np.float64)
        strip = background + coverage[:, None] * (colour - background)
        canvas.pixels[top:bottom, left:right] = np.rint(strip).astype(np.uint8)

    return canvas


def _check_sample(sample: Sequence[float], layout: LayoutSpec) -> np.ndarray:
    values = np.asarray(sample, dtype=np.float64)
    if values.shape != (layout.m,):
        raise ValidationError(f"sample has {values.size} values, layout expects {layout.m}")
    if not np.all(np.isfinite(values)) or values.min() < 0.0 or values.max() > 1.0:
        raise ValidationError("sample values must be finite and lie in [0, 1]")
    return values
