"""Decision support for infrastructure reconstruction: a neural emission
regressor, a what-if decision engine, and the surrounding data pipeline."""

from .dataset import (Dataset, clean_missing, load_csv, redistribute,
                      select_feature_columns, split)
from .decision import (Candidate, Curve, DecisionReport, Limit,
                       RankedCandidate, Scenario, check_feasibility, decide,
                       rank_candidates, sweep_parameter)
from .encoding import (FeatureMatrix, Normalizer, encode, encode_row,
                       feature_names_for, fit_normalizer)
from .metrics import Metrics, compute_metrics, evaluate
from .network import (Gradients, Hyperparameters, Network, TrainedModel,
                      backprop, forward, init_network, load_model, loss,
                      predict, save_model, train)
from .pipeline import DEFAULT_TRAIN_FRACTION, run_pipeline
from .schema import (REFERENCE_SCHEMA, ColumnSpec, DatasetSchema, ObjectType)
from .synthetic import generate_synthetic, ground_truth_mco

__version__ = "0.1.0"
