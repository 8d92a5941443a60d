import json
import math

import numpy as np
import pytest

from co2advisor.dataset import clean_missing, redistribute, select_feature_columns, split
from co2advisor.encoding import FeatureMatrix, Normalizer, encode, fit_normalizer
from co2advisor.errors import DimensionMismatch, EmptyTrainingSet
from co2advisor.network import (Hyperparameters, Network, backprop, forward,
                                init_network, load_model, loss, predict,
                                save_model, train)
from co2advisor.schema import REFERENCE_SCHEMA, ObjectType
from co2advisor.synthetic import generate_synthetic

DUMMY_NORM = Normalizer({}, {}, (0.0, 1.0))


def small_fm(n=20, f=5, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.uniform(0, 1, (n, f))
    d = x @ rng.uniform(-1, 1, f) * 0.3 + 0.5
    return FeatureMatrix(x, d, tuple(f"f{i}" for i in range(f)))


class TestInit:
    def test_deterministic(self):
        hp = Hyperparameters(seed=123)
        a, b = init_network(7, hp), init_network(7, hp)
        assert np.array_equal(a.w_in, b.w_in)
        assert np.array_equal(a.w_out, b.w_out)
        assert a.b_out == b.b_out

    def test_within_diameter(self):
        net = init_network(50, Hyperparameters(hidden_units=60, seed=1))
        for arr in (net.w_in, net.b_in, net.w_out):
            assert np.all(np.abs(arr) <= 0.05)
        assert abs(net.b_out) <= 0.05

    def test_mean_near_zero(self):
        # 3 sigma of the mean of 10k U(-0.05, 0.05) draws is ~0.00087
        net = init_network(200, Hyperparameters(hidden_units=50, seed=2))
        assert abs(net.w_in.mean()) < 0.003


class TestForward:
    def test_zero_network(self):
        net = Network(np.zeros((4, 3)), np.zeros(4), np.zeros(4), 0.0)
        y, hidden = forward(net, np.zeros(3))
        assert np.allclose(hidden, 0.5)
        assert y == 0.0

    def test_unit_passthrough(self):
        net = Network(np.zeros((1, 1)), np.zeros(1), np.ones(1), 0.0)
        y, _ = forward(net, np.array([0.7]))
        assert y == pytest.approx(0.5)

    def test_against_straight_line_reimplementation(self):
        rng = np.random.default_rng(5)
        net = Network(rng.normal(size=(4, 3)), rng.normal(size=4),
                      rng.normal(size=4), float(rng.normal()))
        x = rng.uniform(0, 1, 3)
        y, hidden = forward(net, x)
        # independent re-evaluation, scalar loops only
        expect_hidden = []
        for j in range(4):
            z = sum(net.w_in[j, i] * x[i] for i in range(3)) + net.b_in[j]
            expect_hidden.append(1.0 / (1.0 + math.exp(-z)))
        expect_y = sum(net.w_out[j] * expect_hidden[j] for j in range(4)) + net.b_out
        assert np.allclose(hidden, expect_hidden)
        assert y == pytest.approx(expect_y, rel=1e-12)

    def test_dimension_mismatch(self):
        net = Network(np.zeros((2, 3)), np.zeros(2), np.zeros(2), 0.0)
        with pytest.raises(DimensionMismatch):
            forward(net, np.zeros(4))

    def test_hidden_permutation_invariance(self):
        rng = np.random.default_rng(9)
        net = Network(rng.normal(size=(6, 4)), rng.normal(size=6),
                      rng.normal(size=6), 0.3)
        perm = rng.permutation(6)
        permuted = Network(net.w_in[perm], net.b_in[perm], net.w_out[perm],
                           net.b_out)
        x = rng.uniform(0, 1, 4)
        assert forward(net, x)[0] == pytest.approx(forward(permuted, x)[0])


class TestLoss:
    def test_zero_residual(self):
        assert loss(np.array([1.0, 2.0]), np.array([1.0, 2.0])) == 0.0

    def test_single_term(self):
        assert loss(np.array([2.0]), np.array([0.0])) == 2.0

    def test_two_terms(self):
        assert loss(np.array([1.0, 1.0]), np.array([0.0, 0.0])) == 1.0

    def test_nonnegative_and_zero_iff_equal(self):
        rng = np.random.default_rng(0)
        y, d = rng.normal(size=10), rng.normal(size=10)
        assert loss(y, d) > 0
        assert loss(d, d) == 0.0


class TestBackprop:
    def test_zero_residual_zero_gradients(self):
        net = Network(np.zeros((3, 2)), np.zeros(3), np.zeros(3), 0.25)
        g = backprop(net, np.array([0.1, 0.2]), 0.25)
        assert np.allclose(g.w_in, 0) and np.allclose(g.w_out, 0)
        assert g.b_out == 0.0

    def test_output_gradient_linear_in_residual(self):
        rng = np.random.default_rng(3)
        net = Network(rng.normal(size=(3, 2)), rng.normal(size=3),
                      rng.normal(size=3), 0.0)
        x = rng.uniform(0, 1, 2)
        y, _ = forward(net, x)
        g1 = backprop(net, x, y - 0.1)
        g2 = backprop(net, x, y - 0.2)
        assert np.allclose(g2.w_out, 2 * g1.w_out)
        assert g2.b_out == pytest.approx(2 * g1.b_out)

    @pytest.mark.parametrize("trial", range(10))
    def test_matches_central_finite_differences(self, trial):
        rng = np.random.default_rng(trial)
        f = int(rng.integers(1, 7))
        h_units = int(rng.integers(1, 9))
        net = Network(rng.normal(scale=0.8, size=(h_units, f)),
                      rng.normal(scale=0.5, size=h_units),
                      rng.normal(scale=0.8, size=h_units),
                      float(rng.normal(scale=0.5)))
        x = rng.uniform(0, 1, f)
        d = float(rng.uniform(0, 1))
        analytic = backprop(net, x, d)
        numeric = finite_difference_gradients(net, x, d, h=1e-5)
        for a, n in ((analytic.w_in, numeric.w_in),
                     (analytic.b_in, numeric.b_in),
                     (analytic.w_out, numeric.w_out)):
            np.testing.assert_allclose(a, n, rtol=1e-4, atol=1e-7)
        assert analytic.b_out == pytest.approx(numeric.b_out, rel=1e-4, abs=1e-7)


def finite_difference_gradients(net, x, d, h):
    """Central-difference oracle, never touching the analytic path."""

    def objective(w_in, b_in, w_out, b_out):
        hidden = 1.0 / (1.0 + np.exp(-(w_in @ x + b_in)))
        y = w_out @ hidden + b_out
        return 0.5 * (y - d) ** 2

    def grad_of_array(arr, rebuild):
        g = np.zeros_like(arr)
        flat = arr.reshape(-1)
        gf = g.reshape(-1)
        for i in range(flat.size):
            up, down = flat.copy(), flat.copy()
            up[i] += h
            down[i] -= h
            gf[i] = (objective(*rebuild(up.reshape(arr.shape)))
                     - objective(*rebuild(down.reshape(arr.shape)))) / (2 * h)
        return g

    g_w_in = grad_of_array(net.w_in, lambda a: (a, net.b_in, net.w_out, net.b_out))
    g_b_in = grad_of_array(net.b_in, lambda a: (net.w_in, a, net.w_out, net.b_out))
    g_w_out = grad_of_array(net.w_out, lambda a: (net.w_in, net.b_in, a, net.b_out))
    g_b_out = (objective(net.w_in, net.b_in, net.w_out, net.b_out + h)
               - objective(net.w_in, net.b_in, net.w_out, net.b_out - h)) / (2 * h)

    from co2advisor.network import Gradients
    return Gradients(g_w_in, g_b_in, g_w_out, float(g_b_out))


class TestTrain:
    def test_bit_identical_reruns(self):
        fm = small_fm()
        hp = Hyperparameters(hidden_units=8, cycles=10, seed=4)
        a = train(fm, hp, DUMMY_NORM, ObjectType.BOILER_HOUSE, REFERENCE_SCHEMA)
        b = train(fm, hp, DUMMY_NORM, ObjectType.BOILER_HOUSE, REFERENCE_SCHEMA)
        assert np.array_equal(a.network.w_in, b.network.w_in)
        assert a.network.b_out == b.network.b_out
        assert a.final_train_loss == b.final_train_loss

    def test_loss_decreases_from_init(self, synthetic_100):
        ds = clean_missing(redistribute(select_feature_columns(
            generate_synthetic(100, seed=42, noise_sd=0.0)),
            ObjectType.BOILER_HOUSE))
        train_ds, _ = split(ds, 0.75, seed=42)
        norm = fit_normalizer(train_ds)
        fm = encode(train_ds, norm)
        hp = Hyperparameters(seed=42)
        net0 = init_network(fm.x.shape[1], hp)
        y0 = np.array([forward(net0, fm.x[i])[0] for i in range(len(fm.d))])
        model = train(fm, hp, norm, ObjectType.BOILER_HOUSE, train_ds.schema)
        assert model.final_train_loss < loss(y0, fm.d)

    def test_zero_momentum_equals_plain_sgd(self):
        # dual-path run: an update rule with the momentum term removed
        fm = small_fm(n=15, f=4, seed=7)
        hp = Hyperparameters(hidden_units=6, cycles=5, seed=11, momentum=0.0)
        model = train(fm, hp, DUMMY_NORM, ObjectType.BOILER_HOUSE, REFERENCE_SCHEMA)
        plain = plain_sgd(fm, hp)
        assert np.array_equal(model.network.w_in, plain.w_in)
        assert np.array_equal(model.network.w_out, plain.w_out)
        assert model.network.b_out == plain.b_out

    def test_empty_training_set(self):
        fm = FeatureMatrix(np.empty((0, 3)), np.empty(0), ("a", "b", "c"))
        with pytest.raises(EmptyTrainingSet):
            train(fm, Hyperparameters(seed=0), DUMMY_NORM,
                  ObjectType.BOILER_HOUSE, REFERENCE_SCHEMA)


def plain_sgd(fm, hp):
    """Momentum-free SGD written independently of the trainer."""
    net = init_network(fm.x.shape[1], hp)
    w_in, b_in = net.w_in.copy(), net.b_in.copy()
    w_out, b_out = net.w_out.copy(), net.b_out
    rng = np.random.default_rng(hp.seed)
    for _ in range(hp.cycles):
        for i in rng.permutation(len(fm.d)):
            x = fm.x[i]
            hidden = 1.0 / (1.0 + np.exp(-(w_in @ x + b_in)))
            r = float(w_out @ hidden + b_out) - fm.d[i]
            dh = r * w_out * hidden * (1 - hidden)
            w_out = w_out - hp.learning_rate * r * hidden
            b_out = b_out - hp.learning_rate * r
            w_in = w_in - hp.learning_rate * np.outer(dh, x)
            b_in = b_in - hp.learning_rate * dh
    return Network(w_in, b_in, w_out, float(b_out))


class TestPredict:
    def test_constant_network_returns_inverted_bias(self, boiler_model):
        model, _ = boiler_model
        constant = Network(model.network.w_in, model.network.b_in,
                           np.zeros_like(model.network.w_out), 0.25)
        from dataclasses import replace
        frozen = replace(model, network=constant)
        ds = generate_synthetic(5, seed=1)
        ds = clean_missing(redistribute(select_feature_columns(ds),
                                        ObjectType.BOILER_HOUSE))
        for i in range(len(ds)):
            got = predict(frozen, ds.row_as_dict(i))
            assert got == pytest.approx(model.normalizer.denormalize_target(0.25))

    def test_pure_function(self, boiler_model):
        model, _ = boiler_model
        ds = clean_missing(redistribute(select_feature_columns(
            generate_synthetic(3, seed=2)), ObjectType.BOILER_HOUSE))
        row = ds.row_as_dict(0)
        assert predict(model, row) == predict(model, row)

    def test_toy_convergence_on_training_row(self):
        # noise-free toy: 1 informative feature, long training
        rng = np.random.default_rng(1)
        x = rng.uniform(0, 1, (20, 1))
        d = 0.2 + 0.6 * x[:, 0]
        fm = FeatureMatrix(x, d, ("v",))
        hp = Hyperparameters(hidden_units=8, cycles=3000, learning_rate=0.05, seed=3)
        model = train(fm, hp, DUMMY_NORM, ObjectType.BOILER_HOUSE, REFERENCE_SCHEMA)
        y, _ = forward(model.network, x[0])
        assert y == pytest.approx(d[0], abs=0.03)


class TestPersistence:
    def test_round_trip_bit_stable_predictions(self, boiler_model):
        model, metrics = boiler_model
        text = save_model(model, metrics.to_dict())
        loaded, loaded_metrics = load_model(text)
        assert loaded_metrics == metrics.to_dict()
        ds = clean_missing(redistribute(select_feature_columns(
            generate_synthetic(10, seed=77)), ObjectType.BOILER_HOUSE))
        for i in range(len(ds)):
            row = ds.row_as_dict(i)
            assert predict(loaded, row) == predict(model, row)

    def test_version_field_mandatory(self, boiler_model):
        model, _ = boiler_model
        doc = json.loads(save_model(model))
        assert doc["version"] == 1
        del doc["version"]
        with pytest.raises(ValueError):
            load_model(json.dumps(doc))

    def test_save_is_deterministic(self, boiler_model):
        model, _ = boiler_model
        assert save_model(model) == save_model(model)
