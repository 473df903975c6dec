"""Bar-image encoding: layout geometry, rasterization and PNG output."""

from tabimage.encoding.layout import LayoutSpec, layout_from_dict, make_layout, make_palette
from tabimage.encoding.png_io import encode_png, read_png, write_png
from tabimage.encoding.raster import BarPlacement, ImageCanvas, place_bars, rasterize

__all__ = [
    "BarPlacement",
    "ImageCanvas",
    "LayoutSpec",
    "encode_png",
    "layout_from_dict",
    "make_layout",
    "make_palette",
    "place_bars",
    "rasterize",
    "read_png",
    "write_png",
]
