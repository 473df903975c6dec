"""Tests for schema-driven feature expansion."""

import io

import numpy as np
import pytest

from tabimage.common.exceptions import SchemaError
from tabimage.core.types import FeatureKind
from tabimage.data.generators import random_schema
from tabimage.data.ingest import expand_features, parse_table, read_table
from tabimage.data.schemas import ColumnSpec, FeatureSchema, load_schema
from tabimage.data.schemas.tables import RawTable


def _raw(text: str) -> RawTable:
    return parse_table(io.BytesIO(text.encode("utf-8")))


@pytest.fixture
def mixed(mixed_files):
    csv_path, schema_path = mixed_files
    return expand_features(read_table(csv_path), load_schema(schema_path))


class TestExpansionHappyPath:
    """Each column kind expands as declared."""

    def test_width_matches_schema(self, mixed):
        """One numeric, one ordinal, three indicators and one boolean."""
        assert mixed.m == 6
        assert mixed.feature_names == (
            "age", "severity", "colour=red", "colour=green", "colour=blue", "smoker",
        )

    def test_categorical_one_hot(self, mixed):
        """green in [red, green, blue] expands to [0, 1, 0]."""
        np.testing.assert_array_equal(mixed.values[1, 2:5], [0.0, 1.0, 0.0])

    def test_ordinal_rank(self, mixed):
        """high in [low, mid, high] expands to 2."""
        assert mixed.values[1, 1] == 2.0
        assert mixed.values[2, 1] == 1.0

    def test_boolean_tokens(self, mixed):
        """yes/no become 1/0."""
        np.testing.assert_array_equal(mixed.values[:, 5], [1.0, 0.0, 0.0, 1.0])

    def test_numeric_parsed(self, mixed):
        """Numeric cells are parsed as reals."""
        np.testing.assert_array_equal(mixed.values[:, 0], [34.0, 51.0, 47.0, 29.0])

    def test_labels_by_sorted_name(self, mixed):
        """Class ids follow lexicographic order of label strings."""
        assert mixed.class_names == ("sick", "well")
        np.testing.assert_array_equal(mixed.labels, [1, 2, 1, 2])

    def test_ignored_column_skipped(self):
        """Columns listed under ignore do not become features."""
        schema = FeatureSchema(
            label="y",
            columns=[ColumnSpec(name="x", kind=FeatureKind.NUMERIC)],
            ignore=["id"],
        )
        table = expand_features(_raw("id,x,y\n7,1.5,a\n8,2.5,b\n"), schema)

        assert table.feature_names == ("x",)

    def test_cardinality_uses_sorted_observed_values(self):
        """Without a category list, observed values are sorted."""
        schema = FeatureSchema(
            label="y",
            columns=[ColumnSpec(name="c", kind=FeatureKind.CATEGORICAL, cardinality=2)],
        )
        table = expand_features(_raw("c,y\nzeta,a\nalpha,b\n"), schema)

        assert table.feature_names == ("c=alpha", "c=zeta")
        np.testing.assert_array_equal(table.values[0], [0.0, 1.0])

    @pytest.mark.parametrize("seed", range(50))
    def test_random_schema_width(self, seed):
        """Expanded width always equals the schema's predicted width."""
        schema, rows = random_schema(np.random.default_rng(seed))
        header = tuple(c.name for c in schema.columns) + (schema.label,)
        raw = RawTable(header=header, rows=tuple(tuple(r) for r in rows))

        table = expand_features(raw, schema)

        assert table.m == schema.expanded_width
        assert table.n_classes == 2


class TestExpansionErrors:
    """Cells that do not fit the schema are rejected."""

    def _schema(self, column: ColumnSpec) -> FeatureSchema:
        return FeatureSchema(label="y", columns=[column])

    def test_unknown_category(self):
        """A value outside the category list fails with its row."""
        schema = self._schema(
            ColumnSpec(name="c", kind=FeatureKind.CATEGORICAL, categories=["a", "b"])
        )
        with pytest.raises(SchemaError) as exc_info:
            expand_features(_raw("c,y\na,1\nz,2\n"), schema)

        assert exc_info.value.details["row"] == 2
        assert exc_info.value.details["value"] == "z"

    def test_unknown_ordinal(self):
        """A value outside the ordinal order fails."""
        schema = self._schema(ColumnSpec(name="o", kind=FeatureKind.ORDINAL, order=["lo", "hi"]))
        with pytest.raises(SchemaError):
            expand_features(_raw("o,y\nlo,1\nmid,2\n"), schema)

    def test_unparseable_numeric(self):
        """Text in a numeric column fails."""
        schema = self._schema(ColumnSpec(name="x", kind=FeatureKind.NUMERIC))
        with pytest.raises(SchemaError):
            expand_features(_raw("x,y\n1.0,a\nabc,b\n"), schema)

    def test_non_finite_numeric(self):
        """inf is not a usable numeric value."""
        schema = self._schema(ColumnSpec(name="x", kind=FeatureKind.NUMERIC))
        with pytest.raises(SchemaError):
            expand_features(_raw("x,y\n1.0,a\ninf,b\n"), schema)

    def test_missing_value(self):
        """Empty cells are not imputed."""
        schema = self._schema(ColumnSpec(name="x", kind=FeatureKind.NUMERIC))
        with pytest.raises(SchemaError):
            expand_features(_raw("x,y\n,a\n2,b\n"), schema)

    def test_bad_boolean(self):
        """Only recognised boolean tokens are accepted."""
        schema = self._schema(ColumnSpec(name="b", kind=FeatureKind.BOOLEAN))
        with pytest.raises(SchemaError):
            expand_features(_raw("b,y\nyes,a\nmaybe,b\n"), schema)

    def test_cardinality_mismatch(self):
        """Observed distinct values must match the declared cardinality."""
        schema = self._schema(ColumnSpec(name="c", kind=FeatureKind.CATEGORICAL, cardinality=3))
        with pytest.raises(SchemaError):
            expand_features(_raw("c,y\na,1\nb,2\n"), schema)

    def test_undeclared_header_column(self):
        """Every header column must be declared, labelled or ignored."""
        schema = self._schema(ColumnSpec(name="x", kind=FeatureKind.NUMERIC))
        with pytest.raises(SchemaError):
            expand_features(_raw("x,extra,y\n1,2,a\n"), schema)

    def test_schema_column_missing_from_header(self):
        """A schema column absent from the header fails."""
        schema = self._schema(ColumnSpec(name="x", kind=FeatureKind.NUMERIC))
        with pytest.raises(SchemaError):
            expand_features(_raw("z,y\n1,a\n"), schema)
