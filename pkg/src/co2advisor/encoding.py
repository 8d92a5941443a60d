"""Min-max normalization and one-hot feature encoding.

The Normalizer is fitted on the training split only; test rows and
prediction inputs reuse its ranges, clamped to [0,1] so the network never
sees inputs outside its training domain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Cell, Dataset
from .errors import MissingColumn, UnknownCategory
from .schema import DatasetSchema


@dataclass(frozen=True)
class FeatureMatrix:
    """Encoded training data: inputs x in [0,1], normalized targets d."""

    x: np.ndarray
    d: np.ndarray
    feature_names: tuple[str, ...]

    def __post_init__(self):
        if self.x.ndim != 2 or self.x.shape[1] != len(self.feature_names):
            raise ValueError("feature matrix width must match feature_names")
        if self.d.shape != (self.x.shape[0],):
            raise ValueError("target vector length must match row count")


@dataclass(frozen=True)
class Normalizer:
    """Per-column min/max ranges plus fixed one-hot category orders."""

    numeric_ranges: dict[str, tuple[float, float]]
    categorical_orders: dict[str, tuple[str, ...]]
    target_range: tuple[float, float]

    def scale(self, name: str, value: float) -> float:
        """Min-max scale a numeric value into [0,1], clamped."""
        lo, hi = self.numeric_ranges[name]
        if hi == lo:
            return 0.0
        return min(1.0, max(0.0, (float(value) - lo) / (hi - lo)))

    def scale_unclamped(self, name: str, value: float) -> float:
        lo, hi = self.numeric_ranges[name]
        if hi == lo:
            return 0.0
        return (float(value) - lo) / (hi - lo)

    def normalize_target(self, value: float) -> float:
        lo, hi = self.target_range
        if hi == lo:
            return 0.0
        return (float(value) - lo) / (hi - lo)

    def denormalize_target(self, value: float) -> float:
        lo, hi = self.target_range
        return lo + float(value) * (hi - lo)

    def to_dict(self) -> dict:
        return {
            "numeric_ranges": {k: list(v) for k, v in self.numeric_ranges.items()},
            "categorical_orders": {k: list(v) for k, v in self.categorical_orders.items()},
            "target_range": list(self.target_range),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Normalizer":
        return cls(
            numeric_ranges={k: (float(v[0]), float(v[1]))
                            for k, v in d["numeric_ranges"].items()},
            categorical_orders={k: tuple(v)
                                for k, v in d["categorical_orders"].items()},
            target_range=(float(d["target_range"][0]), float(d["target_range"][1])),
        )


def feature_columns(schema: DatasetSchema) -> list:
    """Columns that become network inputs: everything but the target."""
    return [c for c in schema.columns if not c.is_target]


def feature_names_for(schema: DatasetSchema) -> tuple[str, ...]:
    names = []
    for col in feature_columns(schema):
        if col.kind == "categorical":
            names.extend(f"{col.name}={v}" for v in col.allowed_values)
        else:
            names.append(col.name)
    return tuple(names)


def fit_normalizer(train: Dataset) -> Normalizer:
    """Compute min/max per numeric column over the training split only."""
    if len(train) == 0:
        raise ValueError("cannot fit a normalizer on an empty dataset")
    numeric_ranges = {}
    categorical_orders = {}
    target_range = None
    for col in train.schema.columns:
        if col.kind == "numeric":
            raw = train.column_values(col.name)
            if any(v is None for v in raw):
                raise ValueError(f"{col.name}: missing cells; clean the dataset first")
            values = [float(v) for v in raw]
            rng = (min(values), max(values))
            if col.is_target:
                target_range = rng
            else:
                numeric_ranges[col.name] = rng
        elif col.kind == "categorical":
            categorical_orders[col.name] = tuple(col.allowed_values)
    return Normalizer(numeric_ranges, categorical_orders, target_range)


def encode_row(row: dict[str, Cell], schema: DatasetSchema,
               norm: Normalizer) -> np.ndarray:
    """Encode one raw row (target excluded) into a [0,1] feature vector."""
    out = []
    for col in feature_columns(schema):
        if col.name not in row or row[col.name] is None:
            raise MissingColumn(f"feature column {col.name!r} missing from row",
                                column=col.name)
        value = row[col.name]
        if col.kind == "numeric":
            out.append(norm.scale(col.name, value))
        elif col.kind == "boolean":
            out.append(float(int(value)))
        else:
            order = norm.categorical_orders[col.name]
            if value not in order:
                raise UnknownCategory(
                    f"{col.name}: {value!r} not in allowed values {list(order)}",
                    column=col.name)
            out.extend(1.0 if value == v else 0.0 for v in order)
    return np.asarray(out, dtype=np.float64)


def encode(ds: Dataset, norm: Normalizer) -> FeatureMatrix:
    """Encode a clean dataset into the feature matrix and target vector."""
    schema = ds.schema
    names = feature_names_for(schema)
    target_idx = schema.index_of(schema.target.name)
    x = np.empty((len(ds), len(names)), dtype=np.float64)
    d = np.empty(len(ds), dtype=np.float64)
    for i in range(len(ds)):
        row = ds.row_as_dict(i)
        x[i] = encode_row(row, schema, norm)
        d[i] = min(1.0, max(0.0, norm.normalize_target(ds.rows[i][target_idx])))
    return FeatureMatrix(x, d, names)
