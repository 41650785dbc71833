"""Scenario files, result serialization, and CSV emission.

Scenarios are JSON documents::

    {
      "name": "reference",
      "params": {"sigma": 2.0, "theta": 0.5, "eta": 1.0, "gamma0": 1.0,
                 "kappa": 0.0, "y": 1.0, "L_f": 100.0, "g": 5.0,
                 "d": 0.1, "q": 0.05, "gamma_adj": 0.1, "W": 1.0},
      "mode": "foresight",
      "horizon": 2000,
      "shock": {"price_factor": 1.01},
      "tol": 1e-8,
      "divergence_bound": 10.0,
      "sweep": {"param": "q", "lo": 0.0, "hi": 0.1, "count": 21}
    }

``kappa``, ``mode``, ``horizon``, ``shock``, ``tol``, ``divergence_bound``
and ``sweep`` are optional.  All emitted numbers use shortest round-trip
decimal formatting, so repeated runs produce byte-identical files.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .dynamics import (
    PERFECT_FORESIGHT,
    STATIC_EXPECTATIONS,
    Trajectory,
    apply_shock,
    price_map_classification,
    simulate,
)
from .equilibrium import (
    EconomyParams,
    StabilityReport,
    SteadyState,
    full_employment_steady_state,
    stability_classification,
)
from .errors import CalibrationError, StepSingularError

__all__ = [
    "Scenario",
    "ShockSpec",
    "SweepSpec",
    "SweepRow",
    "ScenarioError",
    "parse_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "emit_scenario",
    "run_simulation",
    "run_sweep",
    "steady_state_to_dict",
    "stability_report_to_dict",
    "stability_report_from_dict",
    "trajectory_summary",
    "emit_trajectory_csv",
    "emit_sweep_csv",
    "emit_json",
    "safe_name",
    "TRAJECTORY_HEADER",
    "SWEEP_HEADER",
]

SWEEPABLE_PARAMS = ("q", "d", "g", "gamma_adj", "theta", "sigma")

TRAJECTORY_HEADER = (
    "t,p,p_next,ll_notional,ll_actual,employment,unemployment_rate,"
    "regime,y_nominal,m,m_tilde,d_bar"
)
SWEEP_HEADER = "value,criterion,fprime,classification,simulated_classification"

_MODE_NAMES = {
    "foresight": PERFECT_FORESIGHT,
    "static": STATIC_EXPECTATIONS,
}


class ScenarioError(ValueError):
    """A scenario file failed validation; the message names the field."""


@dataclass(frozen=True)
class ShockSpec:
    price_factor: float = 1.0
    net_savings_delta: float = 0.0
    debt_factor: float = 1.0


@dataclass(frozen=True)
class SweepSpec:
    param: str
    lo: float
    hi: float
    count: int

    def values(self) -> list[float]:
        stride = (self.hi - self.lo) / (self.count - 1)
        return [self.lo + i * stride for i in range(self.count)]


@dataclass(frozen=True)
class Scenario:
    name: str
    params: EconomyParams
    mode: str = PERFECT_FORESIGHT
    horizon: int = 2000
    shock: ShockSpec = ShockSpec(price_factor=1.01)
    tol: float = 1e-8
    divergence_bound: float = 10.0
    sweep: Optional[SweepSpec] = None


# Range rules for scenario params; each entry is (predicate, requirement).
_PARAM_RULES = {
    "sigma": (lambda v: v > 1.0, "must be > 1"),
    "theta": (lambda v: 0.0 < v < 1.0, "must lie in (0, 1)"),
    "eta": (lambda v: v > 0.0, "must be > 0"),
    "gamma0": (lambda v: v > 0.0, "must be > 0"),
    "kappa": (lambda v: v >= 0.0, "must be >= 0"),
    "y": (lambda v: v > 0.0, "must be > 0"),
    "L_f": (lambda v: v > 0.0, "must be > 0"),
    "g": (lambda v: v >= 0.0, "must be >= 0"),
    "d": (lambda v: v >= 0.0, "must be >= 0"),
    "q": (lambda v: v >= 0.0, "must be >= 0"),
    "gamma_adj": (lambda v: v > 0.0, "must be > 0"),
    "W": (lambda v: v > 0.0, "must be > 0"),
}
_REQUIRED_PARAMS = tuple(k for k in _PARAM_RULES if k != "kappa")


def _require_number(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _parse_params(raw: object) -> EconomyParams:
    if not isinstance(raw, dict):
        raise ScenarioError("params: expected an object")
    for key in raw:
        if key not in _PARAM_RULES:
            raise ScenarioError(f"params.{key}: unknown parameter")
    for key in _REQUIRED_PARAMS:
        if key not in raw:
            raise ScenarioError(f"params.{key}: missing required field")
    values = {}
    for key, entry in raw.items():
        value = _require_number(entry, f"params.{key}")
        check, requirement = _PARAM_RULES[key]
        if not check(value):
            raise ScenarioError(f"params.{key}: {requirement}, got {value}")
        values[key] = value
    return EconomyParams.from_values(**values)


def _parse_shock(raw: object) -> ShockSpec:
    if not isinstance(raw, dict):
        raise ScenarioError("shock: expected an object")
    allowed = ("price_factor", "net_savings_delta", "debt_factor")
    for key in raw:
        if key not in allowed:
            raise ScenarioError(f"shock.{key}: unknown field")
    spec = ShockSpec(
        price_factor=_require_number(raw.get("price_factor", 1.0), "shock.price_factor"),
        net_savings_delta=_require_number(
            raw.get("net_savings_delta", 0.0), "shock.net_savings_delta"
        ),
        debt_factor=_require_number(raw.get("debt_factor", 1.0), "shock.debt_factor"),
    )
    if not spec.price_factor > 0.0:
        raise ScenarioError(f"shock.price_factor: must be > 0, got {spec.price_factor}")
    if not spec.debt_factor > 0.0:
        raise ScenarioError(f"shock.debt_factor: must be > 0, got {spec.debt_factor}")
    return spec


def _parse_sweep(raw: object) -> SweepSpec:
    if not isinstance(raw, dict):
        raise ScenarioError("sweep: expected an object")
    for key in raw:
        if key not in ("param", "lo", "hi", "count"):
            raise ScenarioError(f"sweep.{key}: unknown field")
    for key in ("param", "lo", "hi", "count"):
        if key not in raw:
            raise ScenarioError(f"sweep.{key}: missing required field")
    param = raw["param"]
    if param not in SWEEPABLE_PARAMS:
        raise ScenarioError(
            f"sweep.param: must be one of {', '.join(SWEEPABLE_PARAMS)}, got {param!r}"
        )
    lo = _require_number(raw["lo"], "sweep.lo")
    hi = _require_number(raw["hi"], "sweep.hi")
    if not lo < hi:
        raise ScenarioError(f"sweep.lo/hi: need lo < hi, got [{lo}, {hi}]")
    count = raw["count"]
    if isinstance(count, bool) or not isinstance(count, int):
        raise ScenarioError(f"sweep.count: expected an integer, got {count!r}")
    if count < 2:
        raise ScenarioError(f"sweep.count: must be at least 2, got {count}")
    return SweepSpec(param=param, lo=lo, hi=hi, count=count)


def scenario_from_dict(raw: object) -> Scenario:
    """Validate a decoded JSON document and fill defaults."""
    if not isinstance(raw, dict):
        raise ScenarioError("scenario: expected a JSON object")
    allowed = (
        "name", "params", "mode", "horizon", "shock", "tol",
        "divergence_bound", "sweep",
    )
    for key in raw:
        if key not in allowed:
            raise ScenarioError(f"{key}: unknown field")
    if "name" not in raw:
        raise ScenarioError("name: missing required field")
    if not isinstance(raw["name"], str) or not raw["name"]:
        raise ScenarioError(f"name: expected a non-empty string, got {raw['name']!r}")
    if "params" not in raw:
        raise ScenarioError("params: missing required field")
    params = _parse_params(raw["params"])

    mode = PERFECT_FORESIGHT
    if "mode" in raw:
        if raw["mode"] not in _MODE_NAMES:
            raise ScenarioError(
                f"mode: must be one of {', '.join(_MODE_NAMES)}, got {raw['mode']!r}"
            )
        mode = _MODE_NAMES[raw["mode"]]

    horizon = 2000
    if "horizon" in raw:
        if isinstance(raw["horizon"], bool) or not isinstance(raw["horizon"], int):
            raise ScenarioError(f"horizon: expected an integer, got {raw['horizon']!r}")
        if raw["horizon"] < 1:
            raise ScenarioError(f"horizon: must be at least 1, got {raw['horizon']}")
        horizon = raw["horizon"]

    shock = ShockSpec(price_factor=1.01)
    if "shock" in raw:
        shock = _parse_shock(raw["shock"])

    tol = 1e-8
    if "tol" in raw:
        tol = _require_number(raw["tol"], "tol")
        if not tol > 0.0:
            raise ScenarioError(f"tol: must be > 0, got {tol}")

    divergence_bound = 10.0
    if "divergence_bound" in raw:
        divergence_bound = _require_number(raw["divergence_bound"], "divergence_bound")
        if not divergence_bound > 0.0:
            raise ScenarioError(
                f"divergence_bound: must be > 0, got {divergence_bound}"
            )

    sweep = None
    if "sweep" in raw:
        sweep = _parse_sweep(raw["sweep"])

    return Scenario(
        name=raw["name"],
        params=params,
        mode=mode,
        horizon=horizon,
        shock=shock,
        tol=tol,
        divergence_bound=divergence_bound,
        sweep=sweep,
    )


def parse_scenario(path: Union[str, Path]) -> Scenario:
    """Load and validate a scenario file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: malformed JSON: {exc}") from exc
    return scenario_from_dict(raw)


def scenario_to_dict(scenario: Scenario) -> dict:
    """Inverse of :func:`scenario_from_dict` (round-trips exactly)."""
    mode_name = {v: k for k, v in _MODE_NAMES.items()}[scenario.mode]
    doc: dict = {
        "name": scenario.name,
        "params": scenario.params.as_values(),
        "mode": mode_name,
        "horizon": scenario.horizon,
        "shock": {
            "price_factor": scenario.shock.price_factor,
            "net_savings_delta": scenario.shock.net_savings_delta,
            "debt_factor": scenario.shock.debt_factor,
        },
        "tol": scenario.tol,
        "divergence_bound": scenario.divergence_bound,
    }
    if scenario.sweep is not None:
        doc["sweep"] = {
            "param": scenario.sweep.param,
            "lo": scenario.sweep.lo,
            "hi": scenario.sweep.hi,
            "count": scenario.sweep.count,
        }
    return doc


def emit_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    _write_text(path, json.dumps(scenario_to_dict(scenario), indent=2) + "\n")


def run_simulation(scenario: Scenario) -> Trajectory:
    """Simulate the scenario from its shocked initial state."""
    steady = full_employment_steady_state(scenario.params)
    initial = apply_shock(
        steady,
        price_factor=scenario.shock.price_factor,
        net_savings_delta=scenario.shock.net_savings_delta,
        debt_factor=scenario.shock.debt_factor,
    )
    return simulate(
        scenario.params,
        initial=initial,
        horizon=scenario.horizon,
        mode=scenario.mode,
        tol=scenario.tol,
        divergence_bound=scenario.divergence_bound,
    )


@dataclass(frozen=True)
class SweepRow:
    value: float
    criterion: Optional[float]
    fprime: Optional[float]
    classification: str
    simulated_classification: str


def run_sweep(scenario: Scenario) -> list[SweepRow]:
    """Evaluate the sweep grid: analytic classification per point plus the
    simulated outcome of the price-adjustment map under the scenario shock
    (a no-op price factor is promoted to the default 1.01 probe, since the
    map cannot be classified from its own fixed point).

    Points where the benchmark is infeasible or the foresight solve is
    singular at the shocked price are reported as ``Infeasible`` and
    ``Singular`` rows instead of aborting the sweep.
    """
    if scenario.sweep is None:
        raise ScenarioError("sweep: missing required field")
    factor = scenario.shock.price_factor
    if factor == 1.0:
        factor = 1.01  # a no-op shock cannot probe convergence
    rows: list[SweepRow] = []
    for value in scenario.sweep.values():
        try:
            params = scenario.params.with_value(scenario.sweep.param, value)
            report = stability_classification(params)
        except CalibrationError:
            rows.append(SweepRow(value, None, None, "Infeasible", ""))
            continue
        except ValueError as exc:
            raise ScenarioError(
                f"sweep value {value} for {scenario.sweep.param!r} is invalid: {exc}"
            ) from exc
        try:
            simulated = price_map_classification(
                params,
                price_factor=factor,
                horizon=scenario.horizon,
                tol=scenario.tol,
                divergence_bound=scenario.divergence_bound,
                mode=scenario.mode,
            )
        except StepSingularError:
            simulated = "Singular"
        fprime = report.fprime if math.isfinite(report.fprime) else None
        rows.append(
            SweepRow(value, report.criterion, fprime, report.classification, simulated)
        )
    return rows


def steady_state_to_dict(steady: SteadyState) -> dict:
    return {
        "p_star": steady.p_star,
        "l_star": steady.l_star,
        "ll_star": steady.ll_star,
        "m_star": steady.m_star,
        "m_tilde_star": steady.m_tilde_star,
        "d_bar_star": steady.d_bar_star,
        "y_star_nominal": steady.y_star_nominal,
        "criterion": steady.criterion,
        "denominator": steady.denominator,
        "fprime": steady.fprime if math.isfinite(steady.fprime) else None,
    }


def stability_report_to_dict(report: StabilityReport) -> dict:
    return {
        "criterion": report.criterion,
        "fprime": report.fprime if math.isfinite(report.fprime) else None,
        "classification": report.classification,
        "fprime_positive": report.fprime_positive,
        "denominator_positive": report.denominator_positive,
        "overshoot": report.overshoot,
        "marginal_tolerance": report.marginal_tolerance,
    }


def stability_report_from_dict(raw: dict) -> StabilityReport:
    fprime = raw["fprime"]
    return StabilityReport(
        criterion=raw["criterion"],
        fprime=math.nan if fprime is None else fprime,
        classification=raw["classification"],
        fprime_positive=raw["fprime_positive"],
        denominator_positive=raw["denominator_positive"],
        overshoot=raw["overshoot"],
        marginal_tolerance=raw["marginal_tolerance"],
    )


def trajectory_summary(trajectory: Trajectory, name: str) -> dict:
    last = trajectory.records[-1] if trajectory.records else None
    return {
        "scenario": name,
        "mode": trajectory.mode,
        "classification": trajectory.classification,
        "periods": len(trajectory.records),
        "p_star": trajectory.steady.p_star,
        "final_p": last.p_next if last else trajectory.steady.p_star,
        "final_unemployment_rate": last.unemployment_rate if last else 0.0,
        "tol": trajectory.tol,
        "divergence_bound": trajectory.divergence_bound,
    }


def _format_cell(value: Union[float, int, str, None]) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return repr(value)


def emit_trajectory_csv(trajectory: Trajectory, path: Union[str, Path]) -> None:
    """Write one row per simulated period; floats as shortest round-trip
    decimals so output is byte-deterministic."""
    if not trajectory.records:
        raise ValueError("trajectory has no records")
    lines = [TRAJECTORY_HEADER]
    for r in trajectory.records:
        lines.append(
            ",".join(
                _format_cell(cell)
                for cell in (
                    r.t, r.p, r.p_next, r.ll_notional, r.ll_actual,
                    r.employment, r.unemployment_rate, r.regime,
                    r.y_nominal, r.m, r.m_tilde, r.d_bar,
                )
            )
        )
    _write_text(path, "\n".join(lines) + "\n")


def emit_sweep_csv(rows: list[SweepRow], path: Union[str, Path]) -> None:
    lines = [SWEEP_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                _format_cell(cell)
                for cell in (
                    row.value, row.criterion, row.fprime,
                    row.classification, row.simulated_classification,
                )
            )
        )
    _write_text(path, "\n".join(lines) + "\n")


def emit_json(doc: dict, path: Union[str, Path]) -> None:
    """Write a JSON document with stable formatting (byte-deterministic)."""
    _write_text(path, json.dumps(doc, indent=2) + "\n")


def safe_name(name: str) -> str:
    """File-system-safe stem derived from a scenario name."""
    return re.sub(r"[^A-Za-z0-9._-]+", "-", name).strip("-") or "scenario"


def _write_text(path: Union[str, Path], text: str) -> None:
    Path(path).write_bytes(text.encode("utf-8"))
