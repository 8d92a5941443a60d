"""Held-out evaluation metrics, computed in original target units."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import DegenerateTargets, DimensionMismatch, EmptyTestSet


@dataclass(frozen=True)
class Metrics:
    mae: float
    mse: float
    rmse: float
    rae: float
    rse: float
    r2: float
    n: int

    def __post_init__(self):
        for name in ("mae", "mse", "rmse", "rae", "rse"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if abs(self.r2 - (1.0 - self.rse)) > 1e-9:
            raise ValueError("r2 must equal 1 - rse")
        if abs(self.rmse - math.sqrt(self.mse)) > 1e-12:
            raise ValueError("rmse must equal sqrt(mse)")

    def to_dict(self) -> dict:
        return {"mae": self.mae, "mse": self.mse, "rmse": self.rmse,
                "rae": self.rae, "rse": self.rse, "r2": self.r2, "n": self.n}

    @classmethod
    def from_dict(cls, d: dict) -> "Metrics":
        return cls(mae=d["mae"], mse=d["mse"], rmse=d["rmse"], rae=d["rae"],
                   rse=d["rse"], r2=d["r2"], n=d["n"])


def compute_metrics(predictions, actuals) -> Metrics:
    """Metric bundle for predicted vs actual values (same units)."""
    y = np.asarray(predictions, dtype=np.float64)
    d = np.asarray(actuals, dtype=np.float64)
    if y.shape != d.shape or y.ndim != 1:
        raise DimensionMismatch("predictions and actuals must be equal-length vectors")
    n = y.size
    if n < 1:
        raise EmptyTestSet("no samples to evaluate")
    dev = d - d.mean()
    abs_dev_sum = float(np.sum(np.abs(dev)))
    sq_dev_sum = float(np.sum(dev ** 2))
    if sq_dev_sum == 0.0 or abs_dev_sum == 0.0:
        raise DegenerateTargets("all actual values are equal")
    resid = y - d
    mae = float(np.mean(np.abs(resid)))
    mse = float(np.mean(resid ** 2))
    rae = float(np.sum(np.abs(resid))) / abs_dev_sum
    rse = float(np.sum(resid ** 2)) / sq_dev_sum
    return Metrics(mae=mae, mse=mse, rmse=math.sqrt(mse), rae=rae, rse=rse,
                   r2=1.0 - rse, n=n)


def evaluate(model, test: Dataset) -> Metrics:
    """Predict every row of the held-out split and score against actuals."""
    from .network import predict

    if len(test) == 0:
        raise EmptyTestSet("test split is empty")
    target = test.schema.target.name
    target_idx = test.schema.index_of(target)
    predictions = []
    actuals = []
    for i in range(len(test)):
        row = test.row_as_dict(i)
        predictions.append(predict(model, row))
        actuals.append(float(test.rows[i][target_idx]))
    return compute_metrics(predictions, actuals)
