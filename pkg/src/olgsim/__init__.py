"""Deterministic simulator for a three-generation overlapping-generations
economy under monopolistic competition.

The library computes under-employment equilibria from effective demand,
calibrates the full-employment benchmark, classifies its stability by the
net-savings / real-balance criterion, and simulates the nominal
price-adjustment difference equation in perfect-foresight or
static-expectations mode.
"""

from .dynamics import (
    CONVERGED,
    DIVERGED,
    MAX_ITER,
    PERFECT_FORESIGHT,
    PRICE_FLOOR_REL,
    STATIC_EXPECTATIONS,
    SimState,
    StepRecord,
    Trajectory,
    apply_shock,
    numeric_fprime,
    price_map,
    price_map_classification,
    simulate,
    step,
)
from .equilibrium import (
    EXCESS_DEMAND,
    FULL_EMPLOYMENT,
    MARGINAL,
    STABLE,
    UNDER_EMPLOYMENT,
    UNSTABLE,
    DemandComposition,
    EconomyParams,
    EmploymentSolution,
    FiscalFlows,
    StabilityReport,
    SteadyState,
    analytic_fprime,
    effective_demand,
    employment_from_demand,
    fiscal_flows,
    full_employment_steady_state,
    generation_demand_decomposition,
    pension_tax,
    stability_classification,
    unemployment_benefit_tax,
)
from .errors import (
    BracketError,
    CalibrationError,
    NumericalError,
    StepSingularError,
)
from .preferences import (
    HouseholdParams,
    PricePair,
    consumption_demand,
    expenditure_shares,
    good_demand,
    indirect_utility,
    labor_supply,
    labor_supply_numeric,
    labor_supply_slope,
    marginal_utility_of_income,
    price_index,
)
from .production import (
    Technology,
    aggregate_profit,
    demand_curve,
    inverse_demand,
    markup_price,
    profit_at,
    real_wage,
)
from .scenario_io import (
    Scenario,
    ScenarioError,
    ShockSpec,
    SweepSpec,
    emit_scenario,
    emit_sweep_csv,
    emit_trajectory_csv,
    parse_scenario,
    run_simulation,
    run_sweep,
    scenario_from_dict,
    scenario_to_dict,
)

__version__ = "0.1.0"
