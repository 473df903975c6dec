"""Feature schema - how each input column becomes expanded features.

Loaded from a versioned YAML file:

    schema_version: 1
    label: outcome
    columns:
      - {name: age, kind: numeric}
      - {name: severity, kind: ordinal, order: [low, mid, high]}
      - {name: colour, kind: categorical, categories: [red, green, blue]}
      - {name: smoker, kind: boolean}
    ignore: [patient_id]
"""

import hashlib
import json
from pathlib import Path
from typing import Dict, List, Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, model_validator

from tabimage.common.constants import FormatVersions
from tabimage.common.exceptions import ConfigurationError, DatasetIOError
from tabimage.core.types import FeatureKind


class ColumnSpec(BaseModel):
    """One input column and its encoding directive."""
    name: str = Field(..., min_length=1, description="Header name of the column")
    kind: FeatureKind = Field(..., description="numeric | ordinal | categorical | boolean")
    order: Optional[List[str]] = Field(
        default=None, description="Ordinal categories, lowest first"
    )
    categories: Optional[List[str]] = Field(
        default=None, description="Categorical values in indicator order"
    )
    cardinality: Optional[int] = Field(
        default=None, ge=1, description="Number of categories when not listed"
    )

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_directives(self) -> "ColumnSpec":
        if self.kind == FeatureKind.ORDINAL:
            if not self.order:
                raise ValueError(f"ordinal column '{self.name}' needs a non-empty 'order'")
            if len(set(self.order)) != len(self.order):
                raise ValueError(f"ordinal column '{self.name}' has duplicate labels in 'order'")
        elif self.order is not None:
            raise ValueError(f"'order' is only valid for ordinal columns ('{self.name}')")

        if self.kind == FeatureKind.CATEGORICAL:
            if self.categories is None and self.cardinality is None:
                raise ValueError(
                    f"categorical column '{self.name}' needs 'categories' or 'cardinality'"
                )
            if self.categories is not None:
                if len(set(self.categories)) != len(self.categories):
                    raise ValueError(f"categorical column '{self.name}' repeats a category")
                if self.cardinality is not None and self.cardinality != len(self.categories):
                    raise ValueError(
                        f"categorical column '{self.name}': cardinality {self.cardinality} "
                        f"does not match {len(self.categories)} listed categories"
                    )
        elif self.categories is not None or self.cardinality is not None:
            raise ValueError(
                f"'categories'/'cardinality' are only valid for categorical columns ('{self.name}')"
            )
        return self

    @property
    def width(self) -> int:
        """Number of expanded features this column produces."""
        if self.kind == FeatureKind.CATEGORICAL:
            return self.cardinality if self.cardinality is not None else len(self.categories)
        return 1


class FeatureSchema(BaseModel):
    """Versioned description of an input table."""
    schema_version: int = Field(default=FormatVersions.SCHEMA_VERSION)
    label: str = Field(..., min_length=1, description="Name of the target column")
    columns: List[ColumnSpec] = Field(..., min_length=1)
    ignore: List[str] = Field(default_factory=list, description="Header columns to skip")

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_columns(self) -> "FeatureSchema":
        if self.schema_version != FormatVersions.SCHEMA_VERSION:
            raise ValueError(
                f"unsupported schema_version {self.schema_version} "
                f"(expected {FormatVersions.SCHEMA_VERSION})"
            )
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError("column names must be unique")
        if self.label in names:
            raise ValueError(f"label column '{self.label}' must not also be a feature column")
        if self.label in self.ignore:
            raise ValueError(f"label column '{self.label}' cannot be ignored")
        return self

    @property
    def expanded_width(self) -> int:
        """Predicted m after expansion."""
        return sum(column.width for column in self.columns)

    def column(self, name: str) -> ColumnSpec:
        for column in self.columns:
            if column.name == name:
                return column
        raise KeyError(name)

    def compute_hash(self) -> str:
        """Digest of the canonical schema, recorded in manifests."""
        payload = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def load_schema(path: Union[str, Path]) -> FeatureSchema:
    """Load and validate a schema file."""
    path = Path(path)
    if not path.exists():
        raise DatasetIOError(f"Schema file not found: {path}", path=path, missing_input=True)

    with open(path, "r", encoding="utf-8") as f:
        try:
            raw: Dict = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Schema file is not valid YAML: {path}") from e

    try:
        return FeatureSchema.model_validate(raw)
    except PydanticValidationError as e:
        first = e.errors()[0]
        raise ConfigurationError(
            f"Invalid schema {path}: {first['msg']}",
            details={"path": str(path), "errors": len(e.errors())},
        ) from e
