"""HTTP facade over the pipeline and the decision engine.

In-process state keyed by fresh ids, with an optional JSON snapshot file.
All seeds are request parameters, so identical request sequences against a
fresh server give identical responses.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .dataset import Dataset, load_csv
from .decision import Candidate, Scenario, decide, sweep_parameter
from .errors import AdvisorError, CellParseError, ArityError, HeaderMismatch
from .metrics import Metrics
from .network import (Hyperparameters, TrainedModel, load_model, predict,
                      save_model)
from .pipeline import DEFAULT_TRAIN_FRACTION, run_pipeline
from .schema import REFERENCE_SCHEMA, ObjectType

MAX_UPLOAD_BYTES = 10 * 1024 * 1024

SCHEMAS = {"reference": REFERENCE_SCHEMA}


class SessionState:
    """Server-side state: uploaded datasets, trained models, metrics."""

    def __init__(self, snapshot_path: str | None = None):
        self.datasets: dict[str, Dataset] = {}
        self.models: dict[str, TrainedModel] = {}
        self.metrics: dict[str, Metrics] = {}
        self.scenarios: dict[str, Scenario] = {}
        self._counter = 0
        self._lock = threading.Lock()
        self.snapshot_path = Path(snapshot_path) if snapshot_path else None
        if self.snapshot_path and self.snapshot_path.exists():
            self._load_snapshot()

    def fresh_id(self, prefix: str) -> str:
        with self._lock:
            self._counter += 1
            return f"{prefix}-{self._counter}"

    def add_dataset(self, ds: Dataset) -> str:
        ds_id = self.fresh_id("ds")
        with self._lock:
            self.datasets[ds_id] = ds
        self._save_snapshot()
        return ds_id

    def add_model(self, model: TrainedModel, metrics: Metrics) -> str:
        model_id = self.fresh_id("model")
        with self._lock:
            self.models[model_id] = model
            self.metrics[model_id] = metrics
        self._save_snapshot()
        return model_id

    def _save_snapshot(self):
        if not self.snapshot_path:
            return
        with self._lock:
            doc = {
                "counter": self._counter,
                "datasets": {k: v.to_csv() for k, v in self.datasets.items()},
                "models": {k: json.loads(save_model(v, self.metrics[k].to_dict()))
                           for k, v in self.models.items()},
            }
        self.snapshot_path.write_text(json.dumps(doc))

    def _load_snapshot(self):
        doc = json.loads(self.snapshot_path.read_text())
        self._counter = doc["counter"]
        for k, csv_text in doc["datasets"].items():
            self.datasets[k] = load_csv(csv_text, REFERENCE_SCHEMA)
        for k, model_doc in doc["models"].items():
            model, metrics = load_model(json.dumps(model_doc))
            self.models[k] = model
            self.metrics[k] = Metrics.from_dict(metrics)


def _error_response(status: int, err: AdvisorError) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": err.to_dict()})


def _not_found(kind: str, item_id: str) -> JSONResponse:
    return JSONResponse(status_code=404, content={
        "error": {"code": "NotFound", "message": f"unknown {kind} {item_id!r}"}})


def create_app(state: SessionState | None = None) -> FastAPI:
    app = FastAPI(title="co2advisor")
    st = state if state is not None else SessionState()
    app.state.session = st

    @app.exception_handler(AdvisorError)
    async def handle_domain_error(request: Request, err: AdvisorError):
        if isinstance(err, (CellParseError, ArityError, HeaderMismatch)):
            return _error_response(400, err)
        return _error_response(422, err)

    @app.get("/schemas")
    def get_schemas():
        return {name: [c.to_dict() for c in schema.columns]
                for name, schema in SCHEMAS.items()}

    @app.post("/datasets", status_code=201)
    async def upload_dataset(request: Request, schema: str = "reference"):
        body = await request.body()
        if len(body) > MAX_UPLOAD_BYTES:
            return JSONResponse(status_code=413, content={
                "error": {"code": "PayloadTooLarge",
                          "message": f"upload exceeds {MAX_UPLOAD_BYTES} bytes"}})
        if schema not in SCHEMAS:
            return _not_found("schema", schema)
        try:
            ds = load_csv(body, SCHEMAS[schema])
        except AdvisorError as err:
            err.stage = err.stage or "load_csv"
            return _error_response(400, err)
        return {"dataset_id": st.add_dataset(ds), "rows": len(ds)}

    @app.post("/models", status_code=201)
    def train_model(body: dict):
        ds_id = body["dataset_id"]
        if ds_id not in st.datasets:
            return _not_found("dataset", ds_id)
        object_type = ObjectType.parse(body["object_type"])
        seed = int(body.get("seed", 0))
        hp_body = dict(body.get("hyperparameters", {}))
        hp_body.setdefault("seed", seed)
        hp = Hyperparameters(**hp_body)
        fraction = float(body.get("train_fraction", DEFAULT_TRAIN_FRACTION))
        model, metrics = run_pipeline(st.datasets[ds_id], object_type,
                                      hp=hp, train_fraction=fraction, seed=seed)
        model_id = st.add_model(model, metrics)
        return {"model_id": model_id, "metrics": metrics.to_dict()}

    @app.get("/models/{model_id}/metrics")
    def model_metrics(model_id: str):
        if model_id not in st.models:
            return _not_found("model", model_id)
        return st.metrics[model_id].to_dict()

    @app.post("/models/{model_id}/predict")
    def predict_endpoint(model_id: str, body: dict):
        if model_id not in st.models:
            return _not_found("model", model_id)
        mco = predict(st.models[model_id], body["row"])
        return {"mco": mco}

    @app.post("/models/{model_id}/whatif")
    def whatif_endpoint(model_id: str, body: dict):
        if model_id not in st.models:
            return _not_found("model", model_id)
        scenario = Scenario.from_dict(body["scenario"])
        candidates = [Candidate.from_dict(c) for c in body.get("candidates", [])]
        report = decide(st.models[model_id], scenario, candidates,
                        metrics=st.metrics[model_id])
        return report.to_dict()

    @app.post("/models/{model_id}/curve")
    def curve_endpoint(model_id: str, body: dict):
        if model_id not in st.models:
            return _not_found("model", model_id)
        scenario = Scenario.from_dict(body["scenario"])
        base = Candidate.from_dict(body["base"])
        curve = sweep_parameter(st.models[model_id], scenario, base,
                                body["parameter"], float(body["lo"]),
                                float(body["hi"]), int(body["steps"]))
        return curve.to_dict()

    return app
