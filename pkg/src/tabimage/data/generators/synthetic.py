"""Synthetic tabular datasets with deterministic seeding.

Used by tests, demos and the layout sweep when no real table is at hand.
"""

import csv
import io
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import yaml

from tabimage.core.types import FeatureKind
from tabimage.data.schemas.feature_schema import ColumnSpec, FeatureSchema
from tabimage.data.schemas.tables import ExpandedTable

SEVERITY_LEVELS = ["low", "mid", "high"]
REGIONS = ["north", "south", "east", "west"]


@dataclass(frozen=True)
class SyntheticDataset:
    """A generated table as delimited text plus the schema describing it."""
    csv_text: str
    schema: FeatureSchema

    def schema_yaml(self) -> str:
        payload = self.schema.model_dump(mode="json", exclude_none=True)
        return yaml.safe_dump(payload, sort_keys=False)


class SyntheticTableGenerator:
    """Generates labelled tables whose classes differ in feature means."""

    def __init__(self, seed: int = 42):
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    def reset(self) -> None:
        """Restart the random stream from the seed."""
        self._rng = np.random.default_rng(self.seed)

    def separable(
        self,
        n: int = 200,
        m: int = 9,
        n_classes: int = 2,
        class_weights: Optional[Sequence[float]] = None,
        margin: float = 3.0,
    ) -> ExpandedTable:
        """Gaussian blobs whose class centroids are `margin` std-devs apart."""
        weights = np.asarray(class_weights or [1.0] * n_classes, dtype=np.float64)
        weights = weights / weights.sum()
        counts = np.floor(weights * n).astype(int)
        counts[: n - counts.sum()] += 1
        labels = np.repeat(np.arange(1, n_classes + 1), counts)
        self._rng.shuffle(labels)

        centroids = self._rng.normal(0.0, margin, size=(n_classes, m))
        values = centroids[labels - 1] + self._rng.normal(0.0, 1.0, size=(n, m))
        return ExpandedTable(
            values=values,
            labels=labels.astype(np.int64),
            feature_names=tuple(f"f{j + 1}" for j in range(m)),
            class_names=tuple(f"class{c}" for c in range(1, n_classes + 1)),
        )

    def mixed(self, n: int = 200, n_numeric: int = 10) -> SyntheticDataset:
        """Heterogeneous table: numeric, ordinal, categorical and boolean columns."""
        rows: List[List[str]] = []
        for _ in range(n):
            label = int(self._rng.integers(0, 2))
            shift = 1.5 * label
            numeric = self._rng.normal(shift, 1.0, size=n_numeric)
            severity = SEVERITY_LEVELS[min(2, int(self._rng.integers(0, 2)) + label)]
            region = REGIONS[int(self._rng.integers(0, len(REGIONS)))]
            smoker = "yes" if self._rng.random() < 0.3 + 0.4 * label else "no"
            rows.append(
                [f"{v:.6f}" for v in numeric]
                + [severity, region, smoker, "event" if label else "none"]
            )

        columns = [ColumnSpec(name=f"x{j + 1}", kind=FeatureKind.NUMERIC) for j in range(n_numeric)]
        columns += [
            ColumnSpec(name="severity", kind=FeatureKind.ORDINAL, order=SEVERITY_LEVELS),
            ColumnSpec(name="region", kind=FeatureKind.CATEGORICAL, categories=REGIONS),
            ColumnSpec(name="smoker", kind=FeatureKind.BOOLEAN),
        ]
        header = [c.name for c in columns] + ["outcome"]
        return SyntheticDataset(
            csv_text=_to_csv(header, rows),
            schema=FeatureSchema(label="outcome", columns=columns),
        )

    def numeric_dataset(self, n: int = 200, m: int = 9, n_classes: int = 2) -> SyntheticDataset:
        """All-numeric separable table rendered as text with its schema."""
        table = self.separable(n=n, m=m, n_classes=n_classes)
        header = list(table.feature_names) + ["label"]
        rows = [
            [f"{v:.6f}" for v in table.values[i]] + [table.class_names[table.labels[i] - 1]]
            for i in range(table.n)
        ]
        columns = [ColumnSpec(name=name, kind=FeatureKind.NUMERIC) for name in table.feature_names]
        return SyntheticDataset(
            csv_text=_to_csv(header, rows),
            schema=FeatureSchema(label="label", columns=columns),
        )


def random_schema(
    rng: np.random.Generator, max_columns: int = 8
) -> Tuple[FeatureSchema, List[List[str]]]:
    """Random schema plus 12 matching text rows, for expansion-width checks."""
    columns: List[ColumnSpec] = []
    n_columns = int(rng.integers(1, max_columns + 1))
    for j in range(n_columns):
        kind = list(FeatureKind)[int(rng.integers(0, len(FeatureKind)))]
        name = f"c{j}"
        if kind == FeatureKind.ORDINAL:
            order = [f"o{k}" for k in range(int(rng.integers(1, 6)))]
            columns.append(ColumnSpec(name=name, kind=kind, order=order))
        elif kind == FeatureKind.CATEGORICAL:
            categories = [f"k{k}" for k in range(int(rng.integers(1, 7)))]
            columns.append(ColumnSpec(name=name, kind=kind, categories=categories))
        else:
            columns.append(ColumnSpec(name=name, kind=kind))

    rows: List[List[str]] = []
    for i in range(12):
        row: List[str] = []
        for column in columns:
            if column.kind == FeatureKind.NUMERIC:
                row.append(f"{rng.normal():.4f}")
            elif column.kind == FeatureKind.BOOLEAN:
                row.append("true" if rng.random() < 0.5 else "false")
            elif column.kind == FeatureKind.ORDINAL:
                row.append(column.order[int(rng.integers(0, len(column.order)))])
            else:
                row.append(column.categories[int(rng.integers(0, len(column.categories)))])
        row.append("a" if i % 2 == 0 else "b")
        rows.append(row)

    return FeatureSchema(label="target", columns=columns), rows


def _to_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()
