"""What-if decision engine: scenarios, candidate ranking, parameter sweeps.

A scenario fixes the parameters of equipment that is not being replaced
and declares program constraints; candidates override the varied
parameters. The engine predicts emissions for every candidate, filters by
feasibility and selects the minimum-emission feasible configuration.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass, field

from .dataset import Cell
from .errors import (BadRange, NoCandidates, NonNumericParameter,
                     ObjectTypeMismatch, UnknownColumn)
from .metrics import Metrics
from .network import TrainedModel, predict
from .schema import ObjectType


@dataclass(frozen=True)
class Limit:
    min: float | None = None
    max: float | None = None
    allowed: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.min is not None and self.max is not None and self.min > self.max:
            raise ValueError("limit min must be <= max")
        if self.allowed is not None:
            object.__setattr__(self, "allowed", tuple(self.allowed))

    def violated_by(self, value: Cell) -> bool:
        if self.min is not None and float(value) < self.min:
            return True
        if self.max is not None and float(value) > self.max:
            return True
        if self.allowed is not None and value not in self.allowed:
            return True
        return False

    def to_dict(self) -> dict:
        out = {}
        if self.min is not None:
            out["min"] = self.min
        if self.max is not None:
            out["max"] = self.max
        if self.allowed is not None:
            out["allowed"] = list(self.allowed)
        return out


@dataclass(frozen=True)
class Scenario:
    object_type: ObjectType
    fixed_values: dict[str, Cell] = field(default_factory=dict)
    limits: dict[str, Limit] = field(default_factory=dict)
    label: str = ""

    def to_dict(self) -> dict:
        return {
            "object_type": self.object_type.value,
            "fixed_values": dict(self.fixed_values),
            "limits": {k: v.to_dict() for k, v in self.limits.items()},
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        return cls(
            object_type=ObjectType.parse(d["object_type"]),
            fixed_values=dict(d.get("fixed_values", {})),
            limits={k: Limit(min=v.get("min"), max=v.get("max"),
                             allowed=tuple(v["allowed"]) if "allowed" in v else None)
                    for k, v in d.get("limits", {}).items()},
            label=d.get("label", ""),
        )


@dataclass(frozen=True)
class Candidate:
    id: str
    overrides: dict[str, Cell] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"id": self.id, "overrides": dict(self.overrides)}

    @classmethod
    def from_dict(cls, d: dict) -> "Candidate":
        return cls(id=d["id"], overrides=dict(d.get("overrides", {})))


@dataclass(frozen=True)
class RankedCandidate:
    candidate_id: str
    predicted_mco: float
    feasible: bool
    violated_limits: tuple[str, ...]
    rank: int | None

    def to_dict(self) -> dict:
        return {
            "candidate_id": self.candidate_id,
            "predicted_mco": self.predicted_mco,
            "feasible": self.feasible,
            "violated_limits": list(self.violated_limits),
            "rank": self.rank,
        }


@dataclass(frozen=True)
class Curve:
    parameter: str
    points: tuple[tuple[float, float], ...]
    scenario_snapshot: Scenario

    def to_dict(self) -> dict:
        return {
            "parameter": self.parameter,
            "points": [list(p) for p in self.points],
            "scenario": self.scenario_snapshot.to_dict(),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([self.parameter, "predicted_mco"])
        for value, mco in self.points:
            writer.writerow([repr(value), repr(mco)])
        return buf.getvalue()


@dataclass(frozen=True)
class DecisionReport:
    scenario: Scenario
    ranked: tuple[RankedCandidate, ...]
    selected_id: str | None
    metrics: Metrics | None = None

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario.to_dict(),
            "ranked": [r.to_dict() for r in self.ranked],
            "selected": self.selected_id,
            "metrics": self.metrics.to_dict() if self.metrics else None,
        }


def merged_row(scenario: Scenario, candidate: Candidate) -> dict[str, Cell]:
    """Candidate overrides layered on top of the scenario's fixed values."""
    row = dict(scenario.fixed_values)
    row.update(candidate.overrides)
    return row


def check_feasibility(scenario: Scenario,
                      candidate: Candidate) -> tuple[bool, list[str]]:
    """Check the merged row against every scenario limit."""
    row = merged_row(scenario, candidate)
    violations = []
    for name, limit in scenario.limits.items():
        if name not in row:
            raise UnknownColumn(
                f"limit references column {name!r} absent from the merged row",
                column=name)
        if limit.violated_by(row[name]):
            violations.append(name)
    return not violations, violations


def rank_candidates(model: TrainedModel, scenario: Scenario,
                    candidates: list[Candidate]) -> list[RankedCandidate]:
    """Predict every candidate, rank feasible ones by ascending emissions.

    Result order: feasible candidates (ranked 1..k, ties broken by input
    order), then infeasible candidates in input order with no rank.
    """
    if model.object_type is not scenario.object_type:
        raise ObjectTypeMismatch(
            f"model is for {model.object_type.value}, scenario is for "
            f"{scenario.object_type.value}")
    if not candidates:
        raise NoCandidates("no candidates supplied")
    for source in [scenario.fixed_values, scenario.limits,
                   *(c.overrides for c in candidates)]:
        for name in source:
            if not model.schema.has(name):
                raise UnknownColumn(f"column {name!r} not in the model schema",
                                    column=name)

    scored = []
    for cand in candidates:
        feasible, violations = check_feasibility(scenario, cand)
        mco = predict(model, merged_row(scenario, cand))
        scored.append((cand, mco, feasible, violations))

    feasible_part = [s for s in scored if s[2]]
    feasible_part.sort(key=lambda s: s[1])  # stable: ties keep input order
    result = [RankedCandidate(c.id, mco, True, tuple(v), rank)
              for rank, (c, mco, _, v) in enumerate(feasible_part, start=1)]
    result.extend(RankedCandidate(c.id, mco, False, tuple(v), None)
                  for c, mco, ok, v in scored if not ok)
    return result


def sweep_parameter(model: TrainedModel, scenario: Scenario, base: Candidate,
                    parameter: str, lo: float, hi: float, steps: int) -> Curve:
    """Predict emissions at steps+1 evenly spaced values of one parameter."""
    if not model.schema.has(parameter):
        raise UnknownColumn(f"column {parameter!r} not in the model schema",
                            column=parameter)
    col = model.schema.column(parameter)
    if col.kind != "numeric" or col.is_target:
        raise NonNumericParameter(
            f"{parameter!r} is not a numeric feature column", column=parameter)
    if not lo < hi:
        raise BadRange(f"lo must be < hi, got [{lo}, {hi}]")
    if steps < 1:
        raise BadRange(f"steps must be >= 1, got {steps}")
    row = merged_row(scenario, base)
    delta = (hi - lo) / steps
    points = []
    for k in range(steps + 1):
        value = lo + k * delta
        substituted = dict(row)
        substituted[parameter] = value
        points.append((value, predict(model, substituted)))
    return Curve(parameter, tuple(points), scenario)


def decide(model: TrainedModel, scenario: Scenario,
           candidates: list[Candidate],
           metrics: Metrics | None = None) -> DecisionReport:
    """Rank candidates and select the minimum-emission feasible one."""
    ranked = rank_candidates(model, scenario, candidates)
    selected = next((r.candidate_id for r in ranked if r.rank == 1), None)
    return DecisionReport(scenario=scenario, ranked=tuple(ranked),
                          selected_id=selected, metrics=metrics)
