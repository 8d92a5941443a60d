"""Full training pipeline: select columns, redistribute by object type,
clean, split, normalize, train, evaluate. Errors are tagged with the stage
that raised them."""

from __future__ import annotations

from .dataset import (Dataset, clean_missing, redistribute,
                      select_feature_columns, split)
from .encoding import encode, fit_normalizer
from .errors import AdvisorError
from .metrics import Metrics, evaluate
from .network import Hyperparameters, TrainedModel, train
from .schema import ObjectType

DEFAULT_TRAIN_FRACTION = 0.75


def _stage(name: str):
    class _Ctx:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if isinstance(exc, AdvisorError) and exc.stage is None:
                exc.stage = name
            return False

    return _Ctx()


def run_pipeline(ds: Dataset, object_type: ObjectType,
                 hp: Hyperparameters | None = None,
                 train_fraction: float = DEFAULT_TRAIN_FRACTION,
                 seed: int = 0) -> tuple[TrainedModel, Metrics]:
    """Train a model for one object type and score it on the held-out split.

    seed drives the train/test split; it is also the training seed unless
    hp carries its own.
    """
    if hp is None:
        hp = Hyperparameters(seed=seed)
    with _stage("select_columns"):
        ds = select_feature_columns(ds)
    with _stage("redistribute"):
        ds = redistribute(ds, object_type)
    with _stage("clean_missing"):
        ds = clean_missing(ds)
    with _stage("split"):
        train_ds, test_ds = split(ds, train_fraction, seed)
    with _stage("normalize"):
        norm = fit_normalizer(train_ds)
        fm = encode(train_ds, norm)
    with _stage("train"):
        model = train(fm, hp, norm, object_type, train_ds.schema)
    with _stage("evaluate"):
        metrics = evaluate(model, test_ds)
    return model, metrics
