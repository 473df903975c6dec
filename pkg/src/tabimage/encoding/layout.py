"""Bar layout geometry and the feature palette.

The canvas is split into r rows of c = ceil(m / r) cells. Cell j (1-based)
sits at row ceil(j / c), column j - (row - 1) * c; every cell is b = W / c
wide and h = H / r tall. Pixels are assigned to cells by their centre, so
cell pixel spans are integer, disjoint and tile the canvas.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from tabimage.common.constants import EncodingConstants
from tabimage.common.exceptions import ConfigurationError

RGB = Tuple[int, int, int]

logger = logging.getLogger(__name__)

# Channel value of every palette colour's brightest channel ring
_MAX_LEVEL = 255
_PALETTE_CAPACITY = sum(6 * level for level in range(1, _MAX_LEVEL + 1))


@dataclass(frozen=True)
class LayoutSpec:
    """Bar-image geometry for m features on a W×H canvas with r rows."""
    width: int
    height: int
    rows: int
    columns: int
    bar_width: float
    bar_height: float
    m: int
    palette: Tuple[RGB, ...]
    background: RGB = EncodingConstants.BACKGROUND
    palette_seed: int = EncodingConstants.PALETTE_SEED
    requested_rows: int = 0

    @property
    def column_edges(self) -> np.ndarray:
        """Integer pixel boundaries of the c cell columns (length c + 1)."""
        return _pixel_edges(self.columns, self.bar_width, self.width)

    @property
    def row_edges(self) -> np.ndarray:
        """Integer pixel boundaries of the r cell rows (length r + 1)."""
        return _pixel_edges(self.rows, self.bar_height, self.height)

    def cell_index(self, j: int) -> Tuple[int, int]:
        """1-based (row, column) of feature j (1-based)."""
        row = math.ceil(j / self.columns)
        return row, j - (row - 1) * self.columns

    def cell_pixels(self, j: int) -> Tuple[int, int, int, int]:
        """(left, right, top, bottom) pixel span owned by feature j (1-based)."""
        row, column = self.cell_index(j)
        xs, ys = self.column_edges, self.row_edges
        return int(xs[column - 1]), int(xs[column]), int(ys[row - 1]), int(ys[row])

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "rows": self.rows,
            "requested_rows": self.requested_rows or self.rows,
            "columns": self.columns,
            "bar_width": self.bar_width,
            "bar_height": self.bar_height,
            "m": self.m,
            "palette_seed": self.palette_seed,
            "background": list(self.background),
        }


def make_layout(
    m: int,
    rows: int = EncodingConstants.ROWS,
    width: int = EncodingConstants.WIDTH,
    height: int = EncodingConstants.HEIGHT,
    palette_seed: int = EncodingConstants.PALETTE_SEED,
) -> LayoutSpec:
    """Compute the layout for m features arranged in `rows` rows.

    Raises:
        ConfigurationError: r outside 1..m, or a canvas too small for one
            pixel per cell in each direction.
    """
    if m < 1:
        raise ConfigurationError(f"feature count must be at least 1, got {m}")
    if not 1 <= rows <= m:
        raise ConfigurationError(f"rows must be in 1..{m}, got {rows}")

    columns = math.ceil(m / rows)
    if width < columns:
        raise ConfigurationError(
            f"canvas width {width} is smaller than the {columns} bar columns"
        )
    if height < rows:
        raise ConfigurationError(f"canvas height {height} is smaller than the {rows} bar rows")
    # c = ceil(m / r) can leave whole trailing rows empty (m=37, r=16 -> c=3 fills 13
    # rows); those rows are dropped so every row holds at least one bar.
    used_rows = math.ceil(m / columns)
    if used_rows < rows:
        logger.info(f"{rows} rows of {columns} bars need only {used_rows} rows for m={m}")

    return LayoutSpec(
        width=width,
        height=height,
        rows=used_rows,
        columns=columns,
        bar_width=width / columns,
        bar_height=height / used_rows,
        requested_rows=rows,
        m=m,
        palette=make_palette(m, palette_seed),
        palette_seed=palette_seed,
    )


def make_palette(m: int, seed: int = EncodingConstants.PALETTE_SEED) -> Tuple[RGB, ...]:
    """m distinct, fully saturated colours evenly spaced around the hue circle.

    The hue circle at channel level V is walked in integer steps (6V distinct
    colours, each with one channel at V and one at 0). The first 1530 features
    use level 255; larger m spills onto darker rings. A seeded offset rotates
    where the walk starts.
    """
    if m > _PALETTE_CAPACITY:
        raise ConfigurationError(f"palette supports at most {_PALETTE_CAPACITY} features, got {m}")
    offset = float(np.random.default_rng(seed).random())
    colours = []
    level = _MAX_LEVEL
    remaining = m
    while remaining > 0:
        capacity = 6 * level
        count = min(remaining, capacity)
        start = int(offset * capacity)
        for i in range(count):
            step = (start + (i * capacity) // count) % capacity
            colours.append(_hue_ring(step, level))
        remaining -= count
        level -= 1
    return tuple(colours)


def _hue_ring(step: int, level: int) -> RGB:
    segment, k = divmod(step, level)
    if segment == 0:
        return (level, k, 0)
    if segment == 1:
        return (level - k, level, 0)
    if segment == 2:
        return (0, level, k)
    if segment == 3:
        return (0, level - k, level)
    if segment == 4:
        return (k, 0, level)
    return (level, 0, level - k)


def _pixel_edges(count: int, size: float, limit: int) -> np.ndarray:
    edges = np.ceil(np.arange(count + 1) * size - 0.5).astype(np.int64)
    edges[0] = 0
    edges[-1] = limit
    return edges


def layout_from_dict(data: dict) -> LayoutSpec:
    """Rebuild a layout from `LayoutSpec.to_dict()` output (e.g. a manifest header)."""
    try:
        return make_layout(
            m=int(data["m"]),
            rows=int(data.get("requested_rows") or data["rows"]),
            width=int(data["width"]),
            height=int(data["height"]),
            palette_seed=int(data.get("palette_seed", EncodingConstants.PALETTE_SEED)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"invalid layout record: {e}") from e
