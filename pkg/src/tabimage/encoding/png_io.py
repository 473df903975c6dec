"""PNG read/write with fixed encoder settings.

Output is 8-bit RGB, no alpha, no ancillary chunks (no timestamps, no gamma),
zlib level 9. Identical canvases therefore always produce identical bytes.
"""

import io
import logging
from pathlib import Path
from typing import Union

import numpy as np
import png

from tabimage.common.constants import EncodingConstants
from tabimage.common.exceptions import DatasetIOError
from tabimage.encoding.raster import ImageCanvas

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def encode_png(canvas: ImageCanvas) -> bytes:
    """Serialize a canvas to PNG bytes."""
    writer = png.Writer(
        width=canvas.width,
        height=canvas.height,
        bitdepth=EncodingConstants.PNG_BITDEPTH,
        greyscale=False,
        alpha=False,
        compression=EncodingConstants.PNG_COMPRESSION,
    )
    rows = canvas.pixels.reshape(canvas.height, canvas.width * 3)
    buffer = io.BytesIO()
    writer.write(buffer, rows.tolist())
    return buffer.getvalue()


def write_png(canvas: ImageCanvas, path: PathLike) -> bytes:
    """Write a canvas to `path`, creating parent directories.

    Returns:
        The bytes written, so callers can checksum without re-reading.

    Raises:
        DatasetIOError: the file or its parent directory cannot be written.
    """
    path = Path(path)
    data = encode_png(canvas)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as e:
        raise DatasetIOError(f"cannot write image: {e}", path=str(path)) from e
    logger.debug(f"wrote {path} ({len(data)} bytes)")
    return data


def read_png(path: PathLike) -> ImageCanvas:
    """Read an 8-bit RGB PNG back into a canvas.

    Raises:
        DatasetIOError: missing file, unreadable data or a non-RGB8 image.
    """
    path = Path(path)
    try:
        width, height, data, meta = png.Reader(filename=str(path)).asRGB8()
        pixels = np.vstack([np.asarray(row, dtype=np.uint8) for row in data])
    except FileNotFoundError as e:
        raise DatasetIOError(f"image not found: {path}", path=str(path)) from e
    except (OSError, png.Error) as e:
        raise DatasetIOError(f"cannot read image: {e}", path=str(path)) from e
    if meta.get("alpha"):
        raise DatasetIOError("image has an alpha channel", path=str(path))
    return ImageCanvas(pixels=pixels.reshape(height, width, 3))
