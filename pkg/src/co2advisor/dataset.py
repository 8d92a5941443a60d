"""Dataset container and the row/column pipeline operations.

A Dataset is an immutable table of facility records aligned to a
DatasetSchema. Cells are float (numeric), int 0/1 (boolean), str
(categorical) or None (missing). All operations return new datasets.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import (ArityError, CellParseError, EmptyResult, HeaderMismatch,
                     MissingColumn, TooFewRows)
from .schema import ColumnSpec, DatasetSchema, ObjectType

Cell = float | int | str | None
Row = tuple[Cell, ...]


def _parse_cell(text: str, col: ColumnSpec, row_num: int) -> Cell:
    if text == "":
        return None
    if col.kind == "numeric":
        try:
            v = float(text)
        except ValueError:
            v = math.nan
        if not math.isfinite(v):
            raise CellParseError(
                f"row {row_num}, column {col.name!r}: {text!r} is not a finite number",
                column=col.name, row=row_num)
        return v
    if col.kind == "boolean":
        if text not in ("0", "1"):
            raise CellParseError(
                f"row {row_num}, column {col.name!r}: {text!r} is not 0 or 1",
                column=col.name, row=row_num)
        return int(text)
    if text not in col.allowed_values:
        raise CellParseError(
            f"row {row_num}, column {col.name!r}: {text!r} not in allowed values "
            f"{list(col.allowed_values)}", column=col.name, row=row_num)
    return text


def _validate_cell(value: Cell, col: ColumnSpec) -> Cell:
    if value is None:
        return None
    if col.kind == "numeric":
        v = float(value)
        if not math.isfinite(v):
            raise ValueError(f"{col.name}: non-finite numeric cell")
        return v
    if col.kind == "boolean":
        if value not in (0, 1, 0.0, 1.0):
            raise ValueError(f"{col.name}: boolean cell must be 0 or 1, got {value!r}")
        return int(value)
    if value not in col.allowed_values:
        raise ValueError(f"{col.name}: {value!r} not in allowed values")
    return value


@dataclass(frozen=True)
class Dataset:
    schema: DatasetSchema
    rows: tuple[Row, ...]

    def __post_init__(self):
        width = len(self.schema)
        checked = []
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ArityError(
                    f"row {i} has {len(row)} cells, expected {width}", row=i)
            checked.append(tuple(_validate_cell(v, c)
                                 for v, c in zip(row, self.schema.columns)))
        object.__setattr__(self, "rows", tuple(checked))

    def __len__(self) -> int:
        return len(self.rows)

    def column_values(self, name: str) -> list[Cell]:
        idx = self.schema.index_of(name)
        return [row[idx] for row in self.rows]

    def row_as_dict(self, i: int) -> dict[str, Cell]:
        return dict(zip(self.schema.names, self.rows[i]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.schema.names)
        for row in self.rows:
            out = []
            for v, col in zip(row, self.schema.columns):
                if v is None:
                    out.append("")
                elif col.kind == "numeric":
                    out.append(repr(float(v)))
                elif col.kind == "boolean":
                    out.append(str(int(v)))
                else:
                    out.append(v)
            writer.writerow(out)
        return buf.getvalue()


def load_csv(source: bytes | str, schema: DatasetSchema) -> Dataset:
    """Parse UTF-8 CSV with a header row into a Dataset.

    Header names must match the schema names in order; an empty field is a
    missing cell.
    """
    text = source.decode("utf-8") if isinstance(source, bytes) else source
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise HeaderMismatch("empty input: no header row")
    if header != schema.names:
        raise HeaderMismatch(
            f"header {header!r} does not match schema columns {schema.names!r}")
    rows = []
    for row_num, record in enumerate(reader):
        if not record:
            continue
        if len(record) != len(schema):
            raise ArityError(
                f"row {row_num} has {len(record)} cells, expected {len(schema)}",
                row=row_num)
        rows.append(tuple(_parse_cell(text, col, row_num)
                          for text, col in zip(record, schema.columns)))
    return Dataset(schema, tuple(rows))


def select_feature_columns(ds: Dataset) -> Dataset:
    """Drop the serial-number column Num; everything else is unchanged."""
    if not ds.schema.has("Num"):
        raise MissingColumn("column 'Num' not present", column="Num")
    keep = [i for i, c in enumerate(ds.schema.columns) if c.name != "Num"]
    schema = DatasetSchema(tuple(ds.schema.columns[i] for i in keep))
    rows = tuple(tuple(row[i] for i in keep) for row in ds.rows)
    return Dataset(schema, rows)


def redistribute(ds: Dataset, t: ObjectType) -> Dataset:
    """Restrict the dataset to one object type.

    Keeps rows whose isCGP matches the type and columns that are common or
    specific to the type; drops isCGP itself (constant after filtering).
    """
    if not ds.schema.has("isCGP"):
        raise MissingColumn("column 'isCGP' not present", column="isCGP")
    cgp_idx = ds.schema.index_of("isCGP")
    keep = [i for i, c in enumerate(ds.schema.columns)
            if c.name != "isCGP"
            and c.applicability in ("common", t.applicability)]
    schema = DatasetSchema(tuple(ds.schema.columns[i] for i in keep))
    rows = tuple(tuple(row[i] for i in keep)
                 for row in ds.rows if row[cgp_idx] == t.is_cgp)
    if not rows:
        raise EmptyResult(f"no rows with isCGP = {t.is_cgp} ({t.value})",
                          column="isCGP")
    return Dataset(schema, rows)


def clean_missing(ds: Dataset) -> Dataset:
    """Drop every row that has at least one missing cell."""
    rows = tuple(row for row in ds.rows if all(v is not None for v in row))
    if not rows:
        raise EmptyResult("every row has at least one missing cell")
    return Dataset(ds.schema, rows)


def split(ds: Dataset, train_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministic seeded train/test partition.

    Train gets floor(train_fraction * N) rows chosen by a seeded
    permutation; within each part the original row order is preserved.
    """
    n = len(ds)
    if n < 2:
        raise TooFewRows(f"need at least 2 rows to split, got {n}")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0,1), got {train_fraction}")
    n_train = math.floor(train_fraction * n)
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    train_idx = sorted(perm[:n_train].tolist())
    test_idx = sorted(perm[n_train:].tolist())
    train = Dataset(ds.schema, tuple(ds.rows[i] for i in train_idx))
    test = Dataset(ds.schema, tuple(ds.rows[i] for i in test_idx))
    return train, test
