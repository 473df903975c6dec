"""Schema-driven feature expansion.

numeric     -> parsed real
ordinal     -> 0-based rank in the declared order
categorical -> one indicator per category (full one-hot, no dropped level)
boolean     -> 0/1
label       -> 1..C by lexicographic order of the distinct label strings
"""

import logging
from typing import List, Tuple

import numpy as np
import pandas as pd

from tabimage.common.exceptions import SchemaError
from tabimage.core.types import FeatureKind
from tabimage.data.schemas.feature_schema import ColumnSpec, FeatureSchema
from tabimage.data.schemas.tables import ExpandedTable, RawTable
from tabimage.data.validators.schema_validator import validate_header

logger = logging.getLogger(__name__)

BOOLEAN_TOKENS = {
    **{token: 1.0 for token in ("1", "true", "t", "yes", "y")},
    **{token: 0.0 for token in ("0", "false", "f", "no", "n")},
}


def expand_features(raw: RawTable, schema: FeatureSchema) -> ExpandedTable:
    """Turn text cells into the n×m real matrix the encoder consumes."""
    validate_header(raw.header, schema)
    frame = pd.DataFrame(list(raw.rows), columns=list(raw.header), dtype=str)

    blocks: List[np.ndarray] = []
    names: List[str] = []
    for column in schema.columns:
        block, block_names = _expand_column(column, frame[column.name])
        blocks.append(block)
        names.extend(block_names)

    values = np.hstack(blocks) if blocks else np.zeros((raw.n, 0))
    labels, class_names = _map_labels(frame[schema.label])

    if values.shape[1] != schema.expanded_width:
        raise SchemaError(
            f"expanded width {values.shape[1]} does not match schema width {schema.expanded_width}"
        )

    logger.info(
        f"Expanded {len(schema.columns)} columns into m={values.shape[1]} features, "
        f"C={len(class_names)} classes"
    )
    return ExpandedTable(
        values=values,
        labels=labels,
        feature_names=tuple(names),
        class_names=class_names,
    )


def _expand_column(column: ColumnSpec, cells: pd.Series) -> Tuple[np.ndarray, List[str]]:
    _reject(cells.eq(""), cells, f"missing value in column '{column.name}'")

    if column.kind == FeatureKind.NUMERIC:
        parsed = pd.to_numeric(cells, errors="coerce").to_numpy(dtype=np.float64)
        _reject(~np.isfinite(parsed), cells, f"unparseable numeric value in column '{column.name}'")
        return parsed.reshape(-1, 1), [column.name]

    if column.kind == FeatureKind.BOOLEAN:
        parsed = cells.str.lower().map(BOOLEAN_TOKENS)
        _reject(parsed.isna(), cells, f"unparseable boolean value in column '{column.name}'")
        return parsed.to_numpy(dtype=np.float64).reshape(-1, 1), [column.name]

    if column.kind == FeatureKind.ORDINAL:
        ranks = pd.Categorical(cells, categories=list(column.order), ordered=True)
        _reject(ranks.codes < 0, cells, f"unknown ordinal value in column '{column.name}'")
        return ranks.codes.astype(np.float64).reshape(-1, 1), [column.name]

    categories = _categories(column, cells)
    indicators = pd.Categorical(cells, categories=categories)
    _reject(indicators.codes < 0, cells, f"unknown category in column '{column.name}'")
    block = pd.get_dummies(indicators, dtype=np.float64).to_numpy()
    return block, [f"{column.name}={category}" for category in categories]


def _categories(column: ColumnSpec, cells: pd.Series) -> List[str]:
    if column.categories is not None:
        return list(column.categories)
    observed = sorted(cells.unique())
    if len(observed) != column.cardinality:
        raise SchemaError(
            f"column '{column.name}' declares cardinality {column.cardinality} "
            f"but has {len(observed)} distinct values",
            column=column.name,
        )
    return observed


def _reject(bad, cells: pd.Series, message: str) -> None:
    """Raise SchemaError naming the first flagged row (1-based) and its cell."""
    flagged = np.flatnonzero(np.asarray(bad))
    if flagged.size:
        row = int(flagged[0])
        value = str(cells.iloc[row])
        raise SchemaError(
            f"{message} at row {row + 1}: {value!r}",
            column=str(cells.name), row=row + 1, value=value,
        )


def _map_labels(cells: pd.Series) -> Tuple[np.ndarray, Tuple[str, ...]]:
    _reject(cells.eq(""), cells, f"missing value in column '{cells.name}'")
    classes = pd.Categorical(cells, categories=sorted(cells.unique()))
    labels = classes.codes.astype(np.int64) + 1
    return labels, tuple(str(name) for name in classes.categories)
