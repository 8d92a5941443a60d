import pytest

from co2advisor.dataset import Dataset
from co2advisor.schema import ColumnSpec, DatasetSchema, ObjectType
from co2advisor.pipeline import run_pipeline
from co2advisor.synthetic import generate_synthetic


@pytest.fixture(scope="session")
def mini_schema():
    return DatasetSchema((
        ColumnSpec("Num", "numeric"),
        ColumnSpec("isCGP", "boolean"),
        ColumnSpec("fuel", "categorical", allowed_values=("gas", "coal")),
        ColumnSpec("p1", "numeric", unit="kW"),
        ColumnSpec("p2", "numeric", applicability="cgp_only"),
        ColumnSpec("p3", "boolean", applicability="boiler_house_only"),
        ColumnSpec("mCO", "numeric", category="environmental", is_target=True),
    ))


@pytest.fixture
def mini_dataset(mini_schema):
    rows = (
        (1.0, 0, "gas", 10.0, 1.0, 1, 0.30),
        (2.0, 1, "coal", 20.0, 2.0, 0, 0.50),
        (3.0, 0, "gas", 30.0, 3.0, 0, 0.35),
        (4.0, 1, "gas", 40.0, 4.0, 1, 0.45),
        (5.0, 0, "coal", 50.0, 5.0, 1, 0.60),
        (6.0, 1, "coal", 60.0, 6.0, 0, 0.55),
    )
    return Dataset(mini_schema, rows)


@pytest.fixture(scope="session")
def synthetic_100():
    return generate_synthetic(100, seed=42, noise_sd=0.02)


@pytest.fixture(scope="session")
def boiler_model(synthetic_100):
    """Model + metrics from a full pipeline run with Table-2 defaults."""
    return run_pipeline(synthetic_100, ObjectType.BOILER_HOUSE, seed=42)
