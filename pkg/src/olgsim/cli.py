"""Command-line entry point.

Usage::

    olg calibrate --scenario scenarios/reference.json [--out DIR]
    olg stability --scenario ... [--out DIR]
    olg simulate  --scenario ... [--out DIR] [--mode foresight|static] [--horizon N]
    olg sweep     --scenario ... [--out DIR]
    olg verify    --scenario ... [--seed-free]

Exit codes: 0 success, 1 validation error, 2 numerical error, 3 verification
failure.  Diagnostics go to standard error; result files are written under
``--out`` (default: current directory) with names derived from the scenario.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import Optional, Sequence

from .dynamics import PERFECT_FORESIGHT, STATIC_EXPECTATIONS
from .equilibrium import full_employment_steady_state, stability_classification
from .errors import NumericalError
from .scenario_io import (
    Scenario,
    emit_json,
    emit_sweep_csv,
    emit_trajectory_csv,
    parse_scenario,
    run_simulation,
    run_sweep,
    safe_name,
    stability_report_to_dict,
    steady_state_to_dict,
    trajectory_summary,
)
from .verification import DEFAULT_SEED, run_verification

_CLI_MODES = {"foresight": PERFECT_FORESIGHT, "static": STATIC_EXPECTATIONS}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="olg",
        description="Three-generation OLG economy: calibration, stability "
        "classification, and price-adjustment simulation.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", required=True, help="scenario JSON file")
    common.add_argument(
        "--out", default=".", help="output directory (default: current directory)"
    )
    common.add_argument(
        "--mode", choices=sorted(_CLI_MODES), help="override the scenario's mode"
    )
    common.add_argument(
        "--horizon", type=int, help="override the scenario's horizon"
    )
    common.add_argument(
        "--seed-free",
        action="store_true",
        help="verify: use the deterministic lattice instead of seeded draws",
    )

    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("calibrate", "emit the full-employment benchmark as JSON"),
        ("stability", "emit the stability report as JSON"),
        ("simulate", "emit the trajectory CSV and a summary JSON"),
        ("sweep", "emit the parameter-sweep grid as CSV"),
        ("verify", "run the oracle suite and report pass/fail"),
    ):
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def _load_scenario(args: argparse.Namespace) -> Scenario:
    scenario = parse_scenario(args.scenario)
    if args.mode is not None:
        scenario = dataclasses.replace(scenario, mode=_CLI_MODES[args.mode])
    if args.horizon is not None:
        if args.horizon < 1:
            raise ValueError(f"--horizon must be at least 1, got {args.horizon}")
        scenario = dataclasses.replace(scenario, horizon=args.horizon)
    return scenario


def _out_dir(args: argparse.Namespace) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_calibrate(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    steady = full_employment_steady_state(scenario.params)
    path = _out_dir(args) / f"{safe_name(scenario.name)}.steady.json"
    emit_json(steady_state_to_dict(steady), path)
    print(f"wrote {path}")
    return 0


def _cmd_stability(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    report = stability_classification(scenario.params)
    path = _out_dir(args) / f"{safe_name(scenario.name)}.stability.json"
    emit_json(stability_report_to_dict(report), path)
    print(f"{scenario.name}: {report.classification} (criterion {report.criterion:g})")
    print(f"wrote {path}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    trajectory = run_simulation(scenario)
    out = _out_dir(args)
    stem = safe_name(scenario.name)
    csv_path = out / f"{stem}.trajectory.csv"
    summary_path = out / f"{stem}.summary.json"
    emit_trajectory_csv(trajectory, csv_path)
    emit_json(trajectory_summary(trajectory, scenario.name), summary_path)
    print(
        f"{scenario.name}: {trajectory.classification} after "
        f"{len(trajectory.records)} period(s)"
    )
    print(f"wrote {csv_path}")
    print(f"wrote {summary_path}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    rows = run_sweep(scenario)
    path = _out_dir(args) / f"{safe_name(scenario.name)}.sweep.csv"
    emit_sweep_csv(rows, path)
    print(f"wrote {path} ({len(rows)} rows)")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    seed = None if args.seed_free else DEFAULT_SEED
    results = run_verification(scenario.params, seed=seed)
    failed = False
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
        failed = failed or not result.passed
    return 3 if failed else 0


_COMMANDS = {
    "calibrate": _cmd_calibrate,
    "stability": _cmd_stability,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
