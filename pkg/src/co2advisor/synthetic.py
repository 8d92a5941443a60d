"""Synthetic facility dataset generator.

Stands in for the private historical dataset: 56 reference-schema columns,
a deterministic ground-truth emission function over a fixed feature
subset, and optional Gaussian noise / missing cells. Everything is
reproducible from the seed.

The population is bimodal: roughly half the facilities are small
low-throughput sites and half are large ones, and most physical
parameters co-vary with that scale factor (bigger plants have more pumps,
higher fuel consumption, more wear, lower efficiency). A handful of
economic columns are independent of scale.
"""

from __future__ import annotations

import numpy as np

from .dataset import Dataset
from .schema import REFERENCE_SCHEMA

# Numeric columns: (low, high, direction). Direction +1 means the value
# grows with the facility-scale factor, -1 shrinks with it, 0 is
# independent of it.
NUMERIC_COLUMNS: dict[str, tuple[float, float, int]] = {
    "sumPumpPow": (50.0, 1000.0, +1),
    "totHeatPow": (5.0, 120.0, +1),
    "numPumps": (2.0, 12.0, +1),
    "numBoilers": (1.0, 6.0, +1),
    "boilerAge": (0.0, 45.0, +1),
    "netLength": (1.0, 60.0, +1),
    "instHeatCap": (4.0, 110.0, +1),
    "mainPipeDiam": (100.0, 800.0, +1),
    "anNOxEm": (0.1, 2.5, +1),
    "anSOxEm": (0.05, 4.0, +1),
    "anCOEm": (0.1, 3.0, +1),
    "anDustEm": (0.01, 1.2, +1),
    "flueGasTemp": (110.0, 220.0, +1),
    "specFuelCons": (150.0, 230.0, +1),
    "boilerEff": (0.70, 0.95, -1),
    "heatLossRate": (0.05, 0.25, +1),
    "bkpPumpPow": (0.0, 300.0, +1),
    "accTankVol": (0.0, 500.0, +1),
    "fuelResDays": (1.0, 30.0, +1),
    "dieselGenPow": (0.0, 400.0, +1),
    "heatCost": (900.0, 2600.0, 0),
    "anHeatRelease": (5000.0, 250000.0, +1),
    "maintCostYr": (200.0, 9000.0, 0),
    "staffCount": (4.0, 60.0, +1),
    "capexResid": (100.0, 50000.0, 0),
    "techReadiness": (0.80, 1.00, -1),
    "anOutageHrs": (0.0, 200.0, +1),
    "avgRepairTime": (1.0, 48.0, 0),
    "sensorCov": (0.0, 1.0, -1),
    "numTurb": (1.0, 4.0, +1),
    "elPowCap": (5.0, 250.0, +1),
    "heatElRatio": (0.5, 4.0, +1),
    "anElRelease": (10000.0, 900000.0, +1),
    "turbEff": (0.30, 0.45, -1),
    "avgTempOutBH": (70.0, 115.0, +1),
    "numHotWaterBoil": (1.0, 5.0, +1),
    "peakBoilerPow": (0.0, 40.0, +1),
}

# Boolean columns flip from 0 to 1 as the scale factor crosses the
# threshold (or 1 to 0 for direction -1).
BOOLEAN_COLUMNS: dict[str, tuple[float, int]] = {
    "ashDisposal": (0.55, +1),
    "econInst": (0.45, +1),
    "bkpFuel": (0.50, +1),
    "gridRedund": (0.60, +1),
    "pipeCoating": (0.40, -1),
    "autoCtrl": (0.50, -1),
    "condMode": (0.55, +1),
    "weathReg": (0.45, -1),
    "retTempCtrl": (0.50, -1),
    "bhAutoMode": (0.60, -1),
}

# Categorical columns indexed by the scale factor; fuel and tariffZone are
# drawn independently.
SCALED_CATEGORICALS = ("pumpEeClass", "emCtrlSys", "insulType", "eeBoilCGP")
FREE_CATEGORICALS = ("fuel", "tariffZone")

JITTER = 0.06

# Per-fuel additive offsets of the ground-truth emission function, t/MWh.
FUEL_OFFSETS = {"gas": 0.0, "biomass": 0.01, "oil": 0.02, "coal": 0.03}


def ground_truth_mco(fuel: str, spec_fuel_cons: float, boiler_eff: float,
                     heat_loss_rate: float, sum_pump_pow: float) -> float:
    """Noise-free specific CO2 emissions for a facility configuration.

    Smooth and mildly nonlinear in four numeric features common to both
    object types, with an additive per-fuel offset. Units: t/MWh.
    """
    u_sfc = (spec_fuel_cons - 150.0) / 80.0
    u_ineff = (0.95 - boiler_eff) / 0.25
    u_loss = (heat_loss_rate - 0.05) / 0.20
    u_pump = (sum_pump_pow - 50.0) / 950.0
    return (0.20
            + FUEL_OFFSETS[fuel]
            + 0.30 * u_sfc
            + 0.20 * u_ineff
            + 0.10 * u_loss
            + 0.08 * u_pump ** 2
            + 0.06 * u_sfc * u_ineff)


def _scale_factor(rng: np.random.Generator) -> float:
    # Bimodal: small facilities cluster near 0, large ones near 1.
    if rng.integers(0, 2) == 1:
        return float(rng.uniform(0.7, 1.0))
    return float(rng.uniform(0.0, 0.3))


def generate_synthetic(n_rows: int, seed: int, noise_sd: float = 0.0,
                       missing_fraction: float = 0.0) -> Dataset:
    """Generate a reference-schema dataset of n_rows facility records.

    Object types alternate row by row so both are always represented.
    noise_sd is the standard deviation of Gaussian noise added to the
    target (t/MWh). missing_fraction of the cells (never Num, isCGP or
    the target) are blanked at random.
    """
    if n_rows < 1:
        raise ValueError("n_rows must be >= 1")
    if noise_sd < 0:
        raise ValueError("noise_sd must be >= 0")
    if not 0.0 <= missing_fraction < 1.0:
        raise ValueError("missing_fraction must be in [0,1)")
    rng = np.random.default_rng(seed)
    # separate stream: noise level must not perturb the feature draws
    noise_rng = np.random.default_rng((seed, 1))
    rows = []
    for i in range(n_rows):
        s = _scale_factor(rng)
        record: dict[str, object] = {"Num": float(i + 1), "isCGP": i % 2}
        for col in REFERENCE_SCHEMA.columns:
            if col.name in ("Num", "isCGP") or col.is_target:
                continue
            if col.kind == "numeric":
                lo, hi, direction = NUMERIC_COLUMNS[col.name]
                u = rng.uniform(0.0, 1.0) if direction == 0 else _jittered(s, direction, rng)
                record[col.name] = lo + (hi - lo) * u
            elif col.kind == "boolean":
                threshold, direction = BOOLEAN_COLUMNS[col.name]
                level = _jittered(s, direction, rng)
                record[col.name] = int(level > threshold)
            elif col.name in SCALED_CATEGORICALS:
                u = _jittered(s, +1, rng)
                idx = min(int(u * len(col.allowed_values)),
                          len(col.allowed_values) - 1)
                record[col.name] = col.allowed_values[idx]
            else:
                record[col.name] = col.allowed_values[
                    int(rng.integers(0, len(col.allowed_values)))]
        mco = ground_truth_mco(record["fuel"], record["specFuelCons"],
                               record["boilerEff"], record["heatLossRate"],
                               record["sumPumpPow"])
        if noise_sd > 0:
            mco += float(noise_rng.normal(0.0, noise_sd))
        record["mCO"] = mco
        rows.append(record)

    if missing_fraction > 0:
        protected = {"Num", "isCGP", REFERENCE_SCHEMA.target.name}
        for record in rows:
            for col in REFERENCE_SCHEMA.columns:
                if col.name in protected:
                    continue
                if rng.random() < missing_fraction:
                    record[col.name] = None

    return Dataset(REFERENCE_SCHEMA, tuple(
        tuple(record[c.name] for c in REFERENCE_SCHEMA.columns) for record in rows))


def _jittered(s: float, direction: int, rng: np.random.Generator) -> float:
    u = s if direction >= 0 else 1.0 - s
    return float(np.clip(u + rng.uniform(-JITTER, JITTER), 0.0, 1.0))
