import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from co2advisor.dataset import clean_missing, redistribute, select_feature_columns
from co2advisor.errors import DegenerateTargets, EmptyTestSet
from co2advisor.metrics import compute_metrics, evaluate
from co2advisor.schema import ObjectType
from co2advisor.synthetic import generate_synthetic


def streaming_oracle(y, d):
    """One-pass accumulation of every metric, independent of numpy."""
    n = 0
    sum_d = 0.0
    for v in d:
        n += 1
        sum_d += v
    mean_d = sum_d / n
    abs_err = sq_err = abs_dev = sq_dev = 0.0
    for yi, di in zip(y, d):
        abs_err += abs(yi - di)
        sq_err += (yi - di) ** 2
        abs_dev += abs(mean_d - di)
        sq_dev += (mean_d - di) ** 2
    return {
        "mae": abs_err / n,
        "mse": sq_err / n,
        "rmse": math.sqrt(sq_err / n),
        "rae": abs_err / abs_dev,
        "rse": sq_err / sq_dev,
        "r2": 1 - sq_err / sq_dev,
    }


def test_hand_oracle():
    # worked by hand: residuals (0,0,-1); mean(d)=7/3;
    # sum|dev| = 4/3+1/3+5/3 = 10/3; sum dev^2 = (16+1+25)/9 = 14/3
    m = compute_metrics([1.0, 2.0, 3.0], [1.0, 2.0, 4.0])
    assert m.mae == pytest.approx(1 / 3, rel=1e-12)
    assert m.mse == pytest.approx(1 / 3, rel=1e-12)
    assert m.rae == pytest.approx(0.3, rel=1e-12)
    assert m.rse == pytest.approx(3 / 14, rel=1e-12)
    assert m.r2 == pytest.approx(11 / 14, rel=1e-12)
    assert m.n == 3


def test_perfect_predictions():
    m = compute_metrics([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert m.mae == m.mse == m.rae == m.rse == 0.0
    assert m.r2 == 1.0


def test_degenerate_targets():
    with pytest.raises(DegenerateTargets):
        compute_metrics([1.0, 2.0], [5.0, 5.0])


def test_empty():
    with pytest.raises(EmptyTestSet):
        compute_metrics([], [])


finite_vec = arrays(np.float64, st.integers(2, 30),
                    elements=st.floats(-100, 100))


@given(y=finite_vec, d=finite_vec, shift=st.floats(-50, 50))
@settings(max_examples=60, deadline=None)
def test_properties(y, d, shift):
    n = min(len(y), len(d))
    y, d = y[:n], d[:n]
    if np.ptp(d) < 1e-6:  # degenerate / underflow-prone spread
        return
    m = compute_metrics(y, d)
    assert m.r2 + m.rse == pytest.approx(1.0, abs=1e-9)
    assert m.mae <= m.rmse + 1e-12
    oracle = streaming_oracle(y.tolist(), d.tolist())
    for key, value in oracle.items():
        assert getattr(m, key) == pytest.approx(value, rel=1e-9, abs=1e-12)
    shifted = compute_metrics(y + shift, d + shift)
    assert shifted.rae == pytest.approx(m.rae, rel=1e-6, abs=1e-9)
    assert shifted.rse == pytest.approx(m.rse, rel=1e-6, abs=1e-9)


def test_evaluate_full_pipeline(boiler_model):
    _, metrics = boiler_model
    assert metrics.r2 >= 0.9
    assert metrics.r2 + metrics.rse == pytest.approx(1.0, abs=1e-9)


def test_evaluate_does_not_mutate_model(boiler_model):
    model, _ = boiler_model
    before = model.network.w_in.copy()
    ds = clean_missing(redistribute(select_feature_columns(
        generate_synthetic(20, seed=3)), ObjectType.BOILER_HOUSE))
    evaluate(model, ds)
    assert np.array_equal(model.network.w_in, before)
