"""Decoder oracle: estimate normalized feature values back from a bar image.

Colour carries no information here. In every pixel row of a cell the bar is
the foreground run that starts at (or just after) the cell's left edge; its
right end, measured with partial-pixel coverage, is the row's bar length.
Foreground that a neighbouring bar spills into the cell past a background
gap is ignored. The cell estimate is the median over pixel rows.

Morphology moves every bar edge in the image by the same amount, so the
median displacement of observable left edges (cells after the first column
whose left neighbour leaves a background gap) is added back to each
unsaturated right end.
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from tabimage.common.constants import DecoderConstants
from tabimage.common.exceptions import ValidationError
from tabimage.encoding.layout import LayoutSpec
from tabimage.encoding.raster import ImageCanvas


@dataclass(frozen=True)
class DecodedSample:
    """Estimated values in [0, 1] and the share of pixel rows agreeing with each."""
    values: np.ndarray
    confidence: np.ndarray

    def __post_init__(self):
        if self.values.shape != self.confidence.shape or self.values.ndim != 1:
            raise ValidationError("values and confidence must be equal-length vectors")
        if self.values.size and (self.values.min() < 0.0 or self.values.max() > 1.0):
            raise ValidationError("decoded values must lie in [0, 1]")

    @property
    def m(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class _CellRuns:
    span: int
    column: int
    ends: np.ndarray  # per pixel row, bar right end relative to the cell's left edge
    starts: np.ndarray  # per pixel row, left edge offset; NaN where not observable


def foreground_coverage(img: ImageCanvas, layout: LayoutSpec) -> np.ndarray:
    """H×W map of how much of each pixel is bar rather than background.

    The largest per-channel distance from the background is scaled by the
    weakest palette contrast; distances at or below the noise threshold
    count as background.
    """
    background = np.asarray(layout.background, dtype=np.int16)
    distance = np.abs(img.pixels.astype(np.int16) - background).max(axis=2)
    palette = np.asarray(layout.palette, dtype=np.int16)
    contrast = float(np.abs(palette - background).max(axis=1).min())
    coverage = np.clip(distance / contrast, 0.0, 1.0)
    coverage[distance <= DecoderConstants.FOREGROUND_THRESHOLD] = 0.0
    return coverage


def decode(img: ImageCanvas, layout: LayoutSpec) -> DecodedSample:
    """Median bar length per cell, divided by the cell's pixel span.

    Raises:
        ValidationError: image dimensions differ from the layout's canvas.
    """
    if (img.width, img.height) != (layout.width, layout.height):
        raise ValidationError(
            f"image is {img.width}x{img.height}, layout expects {layout.width}x{layout.height}"
        )
    coverage = foreground_coverage(img, layout)
    cells = [_cell_runs(coverage, layout, j) for j in range(1, layout.m + 1)]
    shift = _edge_shift(cells)

    values = np.empty(layout.m, dtype=np.float64)
    confidence = np.empty(layout.m, dtype=np.float64)
    for index, cell in enumerate(cells):
        median = float(np.median(cell.ends))
        length = median
        if 0.0 < median < cell.span - DecoderConstants.SATURATION_PX:
            length = median + shift
        values[index] = min(max(length / cell.span, 0.0), 1.0)
        agree = np.abs(cell.ends - median) <= DecoderConstants.ROW_AGREEMENT_PX
        confidence[index] = float(agree.mean())

    return DecodedSample(values=values, confidence=confidence)


def _edge_shift(cells: List[_CellRuns]) -> float:
    """Median left-edge displacement over observable rows; 0 when none are observable."""
    observed = [
        cell.starts[~np.isnan(cell.starts)]
        for cell in cells
        if cell.column > 1 and np.median(cell.ends) >= DecoderConstants.CALIBRATION_MIN_RUN_PX
    ]
    pooled = np.concatenate(observed) if observed else np.empty(0)
    if pooled.size == 0:
        return 0.0
    return float(np.median(pooled))


def _cell_runs(coverage: np.ndarray, layout: LayoutSpec, j: int) -> _CellRuns:
    left, right, top, bottom = layout.cell_pixels(j)
    span = right - left
    tolerance = max(1, min(DecoderConstants.RUN_START_TOLERANCE_PX, span // 2))

    lo = max(left - tolerance, 0)
    block = coverage[top:bottom, lo:right]
    mask = block > 0.0
    n_rows, n_cols = mask.shape
    rows = np.arange(n_rows)
    index = np.arange(n_cols)
    k0 = left - lo

    window = mask[:, k0:k0 + tolerance + 1]
    found = window.any(axis=1)
    first = k0 + window.argmax(axis=1)

    background = ~mask & (index >= first[:, None])
    stops = np.concatenate([background, np.ones((n_rows, 1), dtype=bool)], axis=1)
    last = np.clip(stops.argmax(axis=1) - 1, 0, n_cols - 1)
    ends = np.where(found, last + block[rows, last] - k0, 0.0)

    gaps = ~mask & (index < k0)
    has_gap = gaps.any(axis=1)
    run_start = np.where(first > k0, first, (n_cols - 1) - gaps[:, ::-1].argmax(axis=1) + 1)
    run_start = np.clip(run_start, 0, n_cols - 1)
    observable = found & ((first > k0) | has_gap)
    starts = np.where(observable, run_start + (1.0 - block[rows, run_start]) - k0, np.nan)

    _, column = layout.cell_index(j)
    return _CellRuns(span=span, column=column, ends=ends, starts=starts)

