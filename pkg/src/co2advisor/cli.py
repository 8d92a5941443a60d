"""Command-line front door: generate data, train, evaluate, predict,
run what-if analyses, sweep parameters, serve the HTTP API.

Success prints JSON (CSV for sweep) on stdout and exits 0; domain errors
print a structured JSON error on stderr and exit 1; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dataset import clean_missing, load_csv, redistribute, select_feature_columns
from .decision import Candidate, Scenario, decide, sweep_parameter
from .errors import AdvisorError
from .metrics import evaluate
from .network import Hyperparameters, load_model, predict, save_model
from .pipeline import DEFAULT_TRAIN_FRACTION, run_pipeline
from .schema import REFERENCE_SCHEMA, ObjectType
from .synthetic import generate_synthetic


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="co2advisor",
        description="Emission-minimizing decision support for infrastructure "
                    "reconstruction")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate-data", help="write a synthetic facility CSV")
    p.add_argument("--rows", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--missing-fraction", type=float, default=0.0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="train a model on a facility CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--type", required=True, help="boiler-house or cgp")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train-fraction", type=float, default=DEFAULT_TRAIN_FRACTION)
    p.add_argument("--hidden-units", type=int, default=None)
    p.add_argument("--learning-rate", type=float, default=None)
    p.add_argument("--cycles", type=int, default=None)
    p.add_argument("--weight-diameter", type=float, default=None)
    p.add_argument("--momentum", type=float, default=None)
    p.add_argument("--out", required=True, help="model JSON path")

    p = sub.add_parser("evaluate", help="score a saved model on a facility CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)

    p = sub.add_parser("predict", help="predict emissions for one row")
    p.add_argument("--model", required=True)
    p.add_argument("--row", required=True, help="JSON file with a feature row")

    p = sub.add_parser("whatif", help="rank candidate configurations")
    p.add_argument("--model", required=True)
    p.add_argument("--scenario", required=True)
    p.add_argument("--candidates", required=True)

    p = sub.add_parser("sweep", help="sweep one parameter, CSV on stdout")
    p.add_argument("--model", required=True)
    p.add_argument("--scenario", required=True)
    p.add_argument("--base", required=True, help="JSON file with base candidate")
    p.add_argument("--parameter", required=True)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--state-file", default=None,
                   help="snapshot path (env CO2ADVISOR_STATE)")

    return parser


def _hyperparameters(args) -> Hyperparameters:
    overrides = {"seed": args.seed}
    for flag, field in (("hidden_units", "hidden_units"),
                        ("learning_rate", "learning_rate"),
                        ("cycles", "cycles"),
                        ("weight_diameter", "weight_diameter"),
                        ("momentum", "momentum")):
        value = getattr(args, flag)
        if value is not None:
            overrides[field] = value
    return Hyperparameters(**overrides)


def _load_json(path: str):
    return json.loads(Path(path).read_text())


def _cmd_generate_data(args) -> int:
    ds = generate_synthetic(args.rows, args.seed, args.noise,
                            args.missing_fraction)
    Path(args.out).write_text(ds.to_csv())
    print(json.dumps({"rows": len(ds), "out": args.out}))
    return 0


def _cmd_train(args) -> int:
    ds = load_csv(Path(args.data).read_bytes(), REFERENCE_SCHEMA)
    object_type = ObjectType.parse(args.type)
    model, metrics = run_pipeline(ds, object_type, hp=_hyperparameters(args),
                                  train_fraction=args.train_fraction,
                                  seed=args.seed)
    Path(args.out).write_text(save_model(model, metrics.to_dict()))
    print(json.dumps(metrics.to_dict()))
    return 0


def _cmd_evaluate(args) -> int:
    model, _ = load_model(Path(args.model).read_text())
    ds = load_csv(Path(args.data).read_bytes(), REFERENCE_SCHEMA)
    ds = clean_missing(redistribute(select_feature_columns(ds), model.object_type))
    print(json.dumps(evaluate(model, ds).to_dict()))
    return 0


def _cmd_predict(args) -> int:
    model, _ = load_model(Path(args.model).read_text())
    row = _load_json(args.row)
    print(json.dumps({"mco": predict(model, row)}))
    return 0


def _cmd_whatif(args) -> int:
    model, metrics = load_model(Path(args.model).read_text())
    scenario = Scenario.from_dict(_load_json(args.scenario))
    candidates = [Candidate.from_dict(c) for c in _load_json(args.candidates)]
    from .metrics import Metrics
    snapshot = Metrics.from_dict(metrics) if metrics else None
    report = decide(model, scenario, candidates, metrics=snapshot)
    print(json.dumps(report.to_dict()))
    return 0


def _cmd_sweep(args) -> int:
    model, _ = load_model(Path(args.model).read_text())
    scenario = Scenario.from_dict(_load_json(args.scenario))
    base = Candidate.from_dict(_load_json(args.base))
    curve = sweep_parameter(model, scenario, base, args.parameter,
                            args.lo, args.hi, args.steps)
    sys.stdout.write(curve.to_csv())
    return 0


def _cmd_serve(args) -> int:
    import os
    import uvicorn
    from .service import SessionState, create_app

    state_file = args.state_file or os.environ.get("CO2ADVISOR_STATE")
    app = create_app(SessionState(snapshot_path=state_file))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


COMMANDS = {
    "generate-data": _cmd_generate_data,
    "train": _cmd_train,
    "evaluate": _cmd_evaluate,
    "predict": _cmd_predict,
    "whatif": _cmd_whatif,
    "sweep": _cmd_sweep,
    "serve": _cmd_serve,
}


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except AdvisorError as err:
        sys.stderr.write(json.dumps({"error": err.to_dict()}) + "\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
