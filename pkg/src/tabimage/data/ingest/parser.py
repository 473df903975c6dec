"""Delimited-text parsing into a RawTable."""

import io
import logging
from pathlib import Path
from typing import BinaryIO, List, Tuple, Union

import pandas as pd

from tabimage.common.exceptions import DatasetIOError, ParseError
from tabimage.data.schemas.tables import RawTable

logger = logging.getLogger(__name__)


def parse_table(stream: BinaryIO, delimiter: str = ",") -> RawTable:
    """Parse UTF-8 delimiter-separated text with a header line.

    Cells are whitespace-trimmed. Blank lines are skipped; any other row whose
    cell count differs from the header is rejected with its line number.
    """
    if len(delimiter) != 1:
        raise ParseError(f"delimiter must be a single character, got {delimiter!r}")

    try:
        text = stream.read().decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise ParseError(f"input is not valid UTF-8: {e.reason}") from e
    if not text.strip():
        raise ParseError("input is empty")

    frame = _read_records(text, delimiter)
    # Padded trailing cells are NaN; empty cells stay "".
    widths = frame.notna().sum(axis=1).to_numpy()

    header: Tuple[str, ...] = ()
    rows: List[Tuple[str, ...]] = []
    for position, record in enumerate(frame.itertuples(index=False, name=None)):
        width = int(widths[position])
        cells = tuple(str(cell).strip() for cell in record[:width])
        if width == 0 or (width == 1 and not cells[0]):
            continue
        line = position + 1
        if not header:
            header = cells
            if len(set(header)) != len(header):
                raise ParseError("header has duplicate column names", line=line)
            continue
        if len(cells) != len(header):
            raise ParseError(
                f"row {line} has {len(cells)} cells, expected {len(header)}", line=line
            )
        rows.append(cells)

    if not header:
        raise ParseError("input is empty")
    if not rows:
        raise ParseError("input has a header but no data rows")

    logger.info(f"Parsed table: {len(rows)} rows x {len(header)} columns")
    return RawTable(header=header, rows=tuple(rows))


def _read_records(text: str, delimiter: str) -> pd.DataFrame:
    """One frame row per physical record, header included, blank lines kept.

    The column count is the widest line's delimiter count plus one, so
    over-long rows are padded instead of tripping the tokenizer.
    """
    capacity = max(line.count(delimiter) for line in text.splitlines()) + 1
    try:
        return pd.read_csv(
            io.StringIO(text),
            sep=delimiter,
            header=None,
            names=list(range(capacity)),
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            skip_blank_lines=False,
        )
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(f"cannot tokenize input: {e}") from e


def read_table(path: Union[str, Path], delimiter: str = ",") -> RawTable:
    """Open a file and parse it."""
    path = Path(path)
    try:
        with open(path, "rb") as f:
            return parse_table(f, delimiter=delimiter)
    except FileNotFoundError as e:
        raise DatasetIOError(
            f"Input file not found: {path}", path=path, missing_input=True
        ) from e
