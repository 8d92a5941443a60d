"""Column schema for the facility dataset.

The reference schema describes 56 columns of heat-generation facility
records (boiler houses and cogeneration plants), grouped into six parameter
categories. Nine columns (Num, isCGP, mCO, fuel, sumPumpPow, anNOxEm,
numTurb, eeBoilCGP, weathReg, avgTempOutBH) are fixed by convention; the
rest are plausible facility parameters filling out the categories.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .errors import MissingColumn

KINDS = ("numeric", "boolean", "categorical")
CATEGORIES = (
    "technical",
    "environmental",
    "energy_efficiency",
    "energy_security",
    "economic",
    "operational_reliability",
)
APPLICABILITIES = ("common", "cgp_only", "boiler_house_only")


class ObjectType(enum.Enum):
    """Facility type a model is trained for. Encoded in data as isCGP 0/1."""

    BOILER_HOUSE = "BoilerHouse"
    COGENERATION_PLANT = "CogenerationPlant"

    @property
    def is_cgp(self) -> int:
        return 1 if self is ObjectType.COGENERATION_PLANT else 0

    @property
    def applicability(self) -> str:
        return "cgp_only" if self is ObjectType.COGENERATION_PLANT else "boiler_house_only"

    @classmethod
    def parse(cls, text: str) -> "ObjectType":
        aliases = {
            "boilerhouse": cls.BOILER_HOUSE,
            "boiler-house": cls.BOILER_HOUSE,
            "boiler_house": cls.BOILER_HOUSE,
            "cogenerationplant": cls.COGENERATION_PLANT,
            "cogeneration-plant": cls.COGENERATION_PLANT,
            "cogeneration_plant": cls.COGENERATION_PLANT,
            "cgp": cls.COGENERATION_PLANT,
            "chp": cls.COGENERATION_PLANT,
        }
        key = text.strip().lower()
        if key not in aliases:
            raise ValueError(f"unknown object type: {text!r}")
        return aliases[key]


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    kind: str
    unit: str = ""
    category: str = "technical"
    applicability: str = "common"
    is_target: bool = False
    allowed_values: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"{self.name}: bad kind {self.kind!r}")
        if self.category not in CATEGORIES:
            raise ValueError(f"{self.name}: bad category {self.category!r}")
        if self.applicability not in APPLICABILITIES:
            raise ValueError(f"{self.name}: bad applicability {self.applicability!r}")
        if (self.kind == "categorical") != bool(self.allowed_values):
            raise ValueError(
                f"{self.name}: allowed_values must be non-empty iff kind is categorical")
        if self.is_target and (self.kind != "numeric" or self.applicability != "common"):
            raise ValueError(f"{self.name}: target column must be numeric and common")
        object.__setattr__(self, "allowed_values", tuple(self.allowed_values))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "unit": self.unit,
            "category": self.category,
            "applicability": self.applicability,
            "is_target": self.is_target,
            "allowed_values": list(self.allowed_values),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ColumnSpec":
        return cls(
            name=d["name"],
            kind=d["kind"],
            unit=d.get("unit", ""),
            category=d.get("category", "technical"),
            applicability=d.get("applicability", "common"),
            is_target=d.get("is_target", False),
            allowed_values=tuple(d.get("allowed_values", ())),
        )


@dataclass(frozen=True)
class DatasetSchema:
    """Ordered list of column specs with exactly one target column."""

    columns: tuple[ColumnSpec, ...]
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError("duplicate column names in schema")
        targets = [c for c in self.columns if c.is_target]
        if len(targets) != 1:
            raise ValueError(f"schema must have exactly one target column, got {len(targets)}")
        object.__setattr__(self, "_index", {c.name: i for i, c in enumerate(self.columns)})

    def __len__(self) -> int:
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    @property
    def target(self) -> ColumnSpec:
        return next(c for c in self.columns if c.is_target)

    def has(self, name: str) -> bool:
        return name in self._index

    def index_of(self, name: str) -> int:
        if name not in self._index:
            raise MissingColumn(f"column {name!r} not in schema", column=name)
        return self._index[name]

    def column(self, name: str) -> ColumnSpec:
        return self.columns[self.index_of(name)]

    def to_json(self) -> str:
        return json.dumps([c.to_dict() for c in self.columns], indent=2)

    @classmethod
    def from_json(cls, text: str) -> "DatasetSchema":
        return cls(tuple(ColumnSpec.from_dict(d) for d in json.loads(text)))


def _c(name, kind, unit="", category="technical", applicability="common",
       is_target=False, allowed=()):
    return ColumnSpec(name, kind, unit, category, applicability, is_target,
                      tuple(allowed))


FUEL_VALUES = ("gas", "coal", "biomass", "oil")
EE_CLASSES = ("A", "B", "C", "D")

# 56 columns: 43 common (incl. Num, isCGP and the target mCO),
# 7 cogeneration-plant-only, 6 boiler-house-only.
REFERENCE_COLUMNS: tuple[ColumnSpec, ...] = (
    _c("Num", "numeric", "", "technical"),
    _c("isCGP", "boolean", "", "technical"),
    _c("mCO", "numeric", "t/MWh", "environmental", is_target=True),
    # technical
    _c("fuel", "categorical", "", "technical", allowed=FUEL_VALUES),
    _c("sumPumpPow", "numeric", "kW", "technical"),
    _c("totHeatPow", "numeric", "MW", "technical"),
    _c("numPumps", "numeric", "", "technical"),
    _c("numBoilers", "numeric", "", "technical"),
    _c("boilerAge", "numeric", "years", "technical"),
    _c("netLength", "numeric", "km", "technical"),
    _c("instHeatCap", "numeric", "Gcal/h", "technical"),
    _c("mainPipeDiam", "numeric", "mm", "technical"),
    # environmental
    _c("anNOxEm", "numeric", "kg/MWh", "environmental"),
    _c("anSOxEm", "numeric", "kg/MWh", "environmental"),
    _c("anCOEm", "numeric", "kg/MWh", "environmental"),
    _c("anDustEm", "numeric", "kg/MWh", "environmental"),
    _c("ashDisposal", "boolean", "", "environmental"),
    _c("flueGasTemp", "numeric", "degC", "environmental"),
    _c("emCtrlSys", "categorical", "", "environmental",
       allowed=("none", "cyclone", "scrubber", "esp")),
    # energy efficiency
    _c("pumpEeClass", "categorical", "", "energy_efficiency", allowed=EE_CLASSES),
    _c("specFuelCons", "numeric", "kg/MWh", "energy_efficiency"),
    _c("boilerEff", "numeric", "fraction", "energy_efficiency"),
    _c("heatLossRate", "numeric", "fraction", "energy_efficiency"),
    _c("insulType", "categorical", "", "energy_efficiency",
       allowed=("mineral", "pur", "none")),
    _c("econInst", "boolean", "", "energy_efficiency"),
    # energy security
    _c("bkpPumpPow", "numeric", "kW", "energy_security"),
    _c("accTankVol", "numeric", "m3", "energy_security"),
    _c("fuelResDays", "numeric", "days", "energy_security"),
    _c("bkpFuel", "boolean", "", "energy_security"),
    _c("gridRedund", "boolean", "", "energy_security"),
    _c("dieselGenPow", "numeric", "kW", "energy_security"),
    # economic
    _c("heatCost", "numeric", "UAH/Gcal", "economic"),
    _c("anHeatRelease", "numeric", "MWh", "economic"),
    _c("maintCostYr", "numeric", "kUAH", "economic"),
    _c("staffCount", "numeric", "", "economic"),
    _c("tariffZone", "categorical", "", "economic",
       allowed=("urban", "suburban", "rural")),
    _c("capexResid", "numeric", "kUAH", "economic"),
    # operational reliability
    _c("techReadiness", "numeric", "fraction", "operational_reliability"),
    _c("pipeCoating", "boolean", "", "operational_reliability"),
    _c("anOutageHrs", "numeric", "h", "operational_reliability"),
    _c("avgRepairTime", "numeric", "h", "operational_reliability"),
    _c("autoCtrl", "boolean", "", "operational_reliability"),
    _c("sensorCov", "numeric", "fraction", "operational_reliability"),
    # cogeneration plant only
    _c("numTurb", "numeric", "", "technical", "cgp_only"),
    _c("eeBoilCGP", "categorical", "", "energy_efficiency", "cgp_only",
       allowed=EE_CLASSES),
    _c("elPowCap", "numeric", "MW", "technical", "cgp_only"),
    _c("heatElRatio", "numeric", "", "technical", "cgp_only"),
    _c("condMode", "boolean", "", "technical", "cgp_only"),
    _c("anElRelease", "numeric", "MWh", "economic", "cgp_only"),
    _c("turbEff", "numeric", "fraction", "energy_efficiency", "cgp_only"),
    # boiler house only
    _c("weathReg", "boolean", "", "technical", "boiler_house_only"),
    _c("avgTempOutBH", "numeric", "degC", "technical", "boiler_house_only"),
    _c("numHotWaterBoil", "numeric", "", "technical", "boiler_house_only"),
    _c("retTempCtrl", "boolean", "", "operational_reliability", "boiler_house_only"),
    _c("peakBoilerPow", "numeric", "MW", "energy_security", "boiler_house_only"),
    _c("bhAutoMode", "boolean", "", "operational_reliability", "boiler_house_only"),
)

REFERENCE_SCHEMA = DatasetSchema(REFERENCE_COLUMNS)

assert len(REFERENCE_SCHEMA) == 56
