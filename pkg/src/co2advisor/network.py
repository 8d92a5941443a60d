"""Single-hidden-layer feed-forward regressor trained by seeded SGD.

Sigmoid hidden layer, linear output neuron, half-sum-of-squares loss.
Training is per-sample stochastic gradient descent with an optional
momentum term (default 0) and a deterministic seed-derived sample order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .dataset import Cell
from .encoding import FeatureMatrix, Normalizer, encode_row
from .errors import (DimensionMismatch, EmptyTrainingSet, NonFiniteLoss)
from .schema import DatasetSchema, ObjectType

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Hyperparameters:
    hidden_units: int = 60
    learning_rate: float = 0.005
    cycles: int = 60
    weight_diameter: float = 0.1
    momentum: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.hidden_units < 1:
            raise ValueError("hidden_units must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.cycles < 1:
            raise ValueError("cycles must be >= 1")
        if self.weight_diameter <= 0:
            raise ValueError("weight_diameter must be > 0")
        if self.momentum < 0:
            raise ValueError("momentum must be >= 0")

    def to_dict(self) -> dict:
        return {
            "hidden_units": self.hidden_units,
            "learning_rate": self.learning_rate,
            "cycles": self.cycles,
            "weight_diameter": self.weight_diameter,
            "momentum": self.momentum,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Network:
    """Weights of the regressor: hidden layer (w_in, b_in), output (w_out, b_out)."""

    w_in: np.ndarray   # H x F
    b_in: np.ndarray   # H
    w_out: np.ndarray  # H
    b_out: float

    def __post_init__(self):
        h, f = self.w_in.shape
        if self.b_in.shape != (h,) or self.w_out.shape != (h,):
            raise DimensionMismatch("inconsistent network shapes")
        for arr in (self.w_in, self.b_in, self.w_out):
            if not np.all(np.isfinite(arr)):
                raise ValueError("non-finite network weights")
        if not math.isfinite(self.b_out):
            raise ValueError("non-finite output bias")

    @property
    def n_features(self) -> int:
        return self.w_in.shape[1]

    @property
    def n_hidden(self) -> int:
        return self.w_in.shape[0]


@dataclass(frozen=True)
class Gradients:
    w_in: np.ndarray
    b_in: np.ndarray
    w_out: np.ndarray
    b_out: float


@dataclass(frozen=True)
class TrainedModel:
    network: Network
    normalizer: Normalizer
    feature_names: tuple[str, ...]
    schema: DatasetSchema
    object_type: ObjectType
    hyperparameters: Hyperparameters
    final_train_loss: float

    def __post_init__(self):
        if len(self.feature_names) != self.network.n_features:
            raise DimensionMismatch(
                "feature_names length must equal network input width")
        if self.final_train_loss < 0:
            raise ValueError("final_train_loss must be >= 0")


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-z))


def init_network(n_features: int, hp: Hyperparameters) -> Network:
    """Draw all weights and biases uniformly from +/- weight_diameter/2."""
    if n_features < 1:
        raise ValueError("n_features must be >= 1")
    half = hp.weight_diameter / 2.0
    rng = np.random.default_rng(hp.seed)
    w_in = rng.uniform(-half, half, size=(hp.hidden_units, n_features))
    b_in = rng.uniform(-half, half, size=hp.hidden_units)
    w_out = rng.uniform(-half, half, size=hp.hidden_units)
    b_out = float(rng.uniform(-half, half))
    return Network(w_in, b_in, w_out, b_out)


def forward(net: Network, x: np.ndarray) -> tuple[float, np.ndarray]:
    """Evaluate the network on one input vector; returns (output, hidden)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.n_features,):
        raise DimensionMismatch(
            f"input has shape {x.shape}, expected ({net.n_features},)")
    hidden = _sigmoid(net.w_in @ x + net.b_in)
    y = float(net.w_out @ hidden + net.b_out)
    return y, hidden


def loss(predictions: np.ndarray, actuals: np.ndarray) -> float:
    """Half sum of squared residuals."""
    predictions = np.asarray(predictions, dtype=np.float64)
    actuals = np.asarray(actuals, dtype=np.float64)
    if predictions.shape != actuals.shape or predictions.ndim != 1:
        raise DimensionMismatch("predictions and actuals must be equal-length vectors")
    if predictions.size < 1:
        raise DimensionMismatch("need at least one sample")
    return float(0.5 * np.sum((predictions - actuals) ** 2))


def backprop(net: Network, x: np.ndarray, d: float) -> Gradients:
    """Gradients of the single-sample loss 0.5*(y-d)^2 w.r.t. all weights."""
    y, hidden = forward(net, x)
    residual = y - float(d)
    g_w_out = residual * hidden
    g_b_out = residual
    delta_hidden = residual * net.w_out * hidden * (1.0 - hidden)
    g_w_in = np.outer(delta_hidden, np.asarray(x, dtype=np.float64))
    g_b_in = delta_hidden
    return Gradients(g_w_in, g_b_in, g_w_out, g_b_out)


def _full_loss(net: Network, x: np.ndarray, d: np.ndarray) -> float:
    hidden = _sigmoid(x @ net.w_in.T + net.b_in)
    y = hidden @ net.w_out + net.b_out
    return float(0.5 * np.sum((y - d) ** 2))


def train(fm: FeatureMatrix, hp: Hyperparameters, norm: Normalizer,
          object_type: ObjectType, schema: DatasetSchema) -> TrainedModel:
    """Run hp.cycles passes of per-sample SGD over the feature matrix."""
    n = fm.x.shape[0]
    if n == 0:
        raise EmptyTrainingSet("training set is empty")
    if not np.all(np.isfinite(fm.x)) or not np.all(np.isfinite(fm.d)):
        raise ValueError("non-finite training data")

    net = init_network(fm.x.shape[1], hp)
    w_in = net.w_in.copy()
    b_in = net.b_in.copy()
    w_out = net.w_out.copy()
    b_out = net.b_out
    v_w_in = np.zeros_like(w_in)
    v_b_in = np.zeros_like(b_in)
    v_w_out = np.zeros_like(w_out)
    v_b_out = 0.0

    lr = hp.learning_rate
    mom = hp.momentum
    order_rng = np.random.default_rng(hp.seed)
    for cycle in range(hp.cycles):
        for i in order_rng.permutation(n):
            x = fm.x[i]
            hidden = _sigmoid(w_in @ x + b_in)
            residual = float(w_out @ hidden + b_out) - fm.d[i]
            delta_hidden = residual * w_out * hidden * (1.0 - hidden)
            v_w_out = mom * v_w_out - lr * residual * hidden
            v_b_out = mom * v_b_out - lr * residual
            v_w_in = mom * v_w_in - lr * np.outer(delta_hidden, x)
            v_b_in = mom * v_b_in - lr * delta_hidden
            w_out = w_out + v_w_out
            b_out = b_out + v_b_out
            w_in = w_in + v_w_in
            b_in = b_in + v_b_in
        cycle_net = Network(w_in.copy(), b_in.copy(), w_out.copy(), float(b_out))
        cycle_loss = _full_loss(cycle_net, fm.x, fm.d)
        if not math.isfinite(cycle_loss):
            raise NonFiniteLoss(
                f"training diverged: non-finite loss after cycle {cycle}",
                cycle=cycle)

    final_net = Network(w_in, b_in, w_out, float(b_out))
    return TrainedModel(
        network=final_net,
        normalizer=norm,
        feature_names=tuple(fm.feature_names),
        schema=schema,
        object_type=object_type,
        hyperparameters=hp,
        final_train_loss=_full_loss(final_net, fm.x, fm.d),
    )


def predict(model: TrainedModel, raw_features: dict[str, Cell]) -> float:
    """Predict specific CO2 emissions (original units) for one raw row."""
    x = encode_row(raw_features, model.schema, model.normalizer)
    if x.shape[0] != model.network.n_features:
        raise DimensionMismatch(
            f"encoded row has {x.shape[0]} features, model expects "
            f"{model.network.n_features}")
    y, _ = forward(model.network, x)
    return model.normalizer.denormalize_target(y)


def save_model(model: TrainedModel, metrics: dict | None = None) -> str:
    """Serialize a trained model (and optional metrics snapshot) to JSON."""
    schema_json = model.schema.to_json()
    doc = {
        "version": MODEL_FORMAT_VERSION,
        "object_type": model.object_type.value,
        "hyperparameters": model.hyperparameters.to_dict(),
        "schema": json.loads(schema_json),
        "schema_fingerprint": _fingerprint(schema_json),
        "normalizer": model.normalizer.to_dict(),
        "feature_names": list(model.feature_names),
        "final_train_loss": model.final_train_loss,
        "weights": {
            "w_in": model.network.w_in.tolist(),
            "b_in": model.network.b_in.tolist(),
            "w_out": model.network.w_out.tolist(),
            "b_out": model.network.b_out,
        },
    }
    if metrics is not None:
        doc["metrics"] = metrics
    return json.dumps(doc, indent=2)


def load_model(text: str) -> tuple[TrainedModel, dict | None]:
    """Inverse of save_model; returns (model, metrics snapshot or None)."""
    doc = json.loads(text)
    if doc.get("version") != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {doc.get('version')!r}")
    schema = DatasetSchema.from_json(json.dumps(doc["schema"]))
    w = doc["weights"]
    net = Network(
        np.asarray(w["w_in"], dtype=np.float64),
        np.asarray(w["b_in"], dtype=np.float64),
        np.asarray(w["w_out"], dtype=np.float64),
        float(w["b_out"]),
    )
    model = TrainedModel(
        network=net,
        normalizer=Normalizer.from_dict(doc["normalizer"]),
        feature_names=tuple(doc["feature_names"]),
        schema=schema,
        object_type=ObjectType(doc["object_type"]),
        hyperparameters=Hyperparameters(**doc["hyperparameters"]),
        final_train_loss=float(doc["final_train_loss"]),
    )
    return model, doc.get("metrics")


def _fingerprint(schema_json: str) -> str:
    import hashlib
    return hashlib.sha256(schema_json.encode("utf-8")).hexdigest()
