"""Price-adjustment dynamics: exact per-period solution, trajectory
simulation, convergence classification, and the finite-difference check on
the analytic price-map slope.

Each period the nominal price moves with the employment gap,

    P_next = gamma_adj * (Ll_notional - L_f l*) + P,

where the notional labor demand comes from goods-market clearing.  Under
perfect foresight the expected-pension term inside labor demand carries
P_next itself, so the pair is solved exactly as a linear system; under
static expectations the pension is valued at the current price and the two
equations decouple.  The predetermined nominal state (net savings
``m_tilde`` and per-person debt ``d_bar``) is rolled forward from the
realized period: the young save the share 1 - alpha of disposable income,
and debt is re-issued at the current price.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .equilibrium import (
    DemandComposition,
    EconomyParams,
    SteadyState,
    demand_linear_terms,
    employment_from_demand,
    full_employment_steady_state,
    generation_demand_decomposition,
)
from .errors import StepSingularError

__all__ = [
    "PERFECT_FORESIGHT",
    "STATIC_EXPECTATIONS",
    "CONVERGED",
    "DIVERGED",
    "MAX_ITER",
    "PRICE_FLOOR_REL",
    "SimState",
    "StepRecord",
    "Trajectory",
    "price_map",
    "step",
    "simulate",
    "numeric_fprime",
    "apply_shock",
    "price_map_classification",
]

# Expectation modes for the pension-valuation price.
PERFECT_FORESIGHT = "foresight"
STATIC_EXPECTATIONS = "static"

# Terminal classifications of a trajectory.
CONVERGED = "Converged"
DIVERGED = "Diverged"
MAX_ITER = "MaxIter"

# Runaway deflation is cut off at this fraction of the benchmark price.
PRICE_FLOOR_REL = 1e-9

_MODES = (PERFECT_FORESIGHT, STATIC_EXPECTATIONS)


@dataclass(frozen=True)
class SimState:
    """Predetermined state at the start of a period."""

    t: int           # period index
    p: float         # current price
    m_tilde: float   # net savings of the old, fixed before the period opens
    d_bar: float     # per-person nominal debt of the young, fixed at issue

    def __post_init__(self) -> None:
        if not self.p > 0.0:
            raise ValueError(f"price must be positive, got {self.p}")


@dataclass(frozen=True)
class StepRecord:
    """Realized outcomes of one simulated period."""

    t: int
    p: float
    p_next: float
    ll_notional: float
    ll_actual: float
    employment: float         # persons employed, ll_actual / l*
    unemployment_rate: float  # 1 - employment / L_f, in [0, 1]
    regime: str
    y_nominal: float          # value of actual output, P * ll_actual * y
    m: float                  # old generation's spending power m_tilde + L_f P q
    m_tilde: float
    d_bar: float
    demand: DemandComposition


@dataclass(frozen=True)
class Trajectory:
    params: EconomyParams
    steady: SteadyState
    mode: str
    tol: float
    divergence_bound: float
    records: tuple[StepRecord, ...]
    classification: str


def _check_mode(mode: str) -> None:
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")


def price_map(
    p: float,
    params: EconomyParams,
    *,
    m_tilde: Optional[float] = None,
    d_bar: Optional[float] = None,
    mode: str = PERFECT_FORESIGHT,
    steady: Optional[SteadyState] = None,
) -> float:
    """Next price from the adjustment rule at a given predetermined state.

    ``m_tilde`` and ``d_bar`` default to their benchmark values, which makes
    this the one-dimensional difference equation whose slope at the
    benchmark is the analytic f'(P*).  Under perfect foresight the solution
    is P_next = (gamma*(A - L_f l*) + P) / (1 - gamma*B), valid only while
    1 - gamma*B > 0; the result is floored at PRICE_FLOOR_REL * P*.
    """
    _check_mode(mode)
    if steady is None:
        steady = full_employment_steady_state(params)
    if m_tilde is None:
        m_tilde = steady.m_tilde_star
    if d_bar is None:
        d_bar = steady.d_bar_star
    a_term, b_term = demand_linear_terms(p, m_tilde, d_bar, params)
    gamma = params.gamma_adj
    if mode == PERFECT_FORESIGHT:
        denom = 1.0 - gamma * b_term
        if denom <= 0.0:
            raise StepSingularError(
                f"foresight solve singular at p={p}: 1 - gamma*B = {denom} <= 0"
            )
        p_next = (gamma * (a_term - steady.ll_star) + p) / denom
    else:
        ll = a_term + b_term * p
        p_next = gamma * (ll - steady.ll_star) + p
    return max(p_next, PRICE_FLOOR_REL * steady.p_star)


def step(
    state: SimState,
    params: EconomyParams,
    mode: str = PERFECT_FORESIGHT,
    steady: Optional[SteadyState] = None,
) -> tuple[SimState, StepRecord]:
    """Advance the economy one period.

    Solves the period's price and employment, then rolls the predetermined
    state forward: the young generation's new net savings are

        m_tilde' = (1-a)*(P*Ll*y - P*g - L_f*d_bar - L_f*P*q + L_f*Q_hat)
                   - L_f*Q_hat

    (share 1-a of disposable income including the expected pension Q_hat,
    minus the pension itself, which they receive next period on top), and
    the new per-person debt is d_bar' = P*d, issued at the current price.
    Income uses actual (capped) employment.
    """
    _check_mode(mode)
    if steady is None:
        steady = full_employment_steady_state(params)
    p = state.p
    p_next = price_map(
        p, params, m_tilde=state.m_tilde, d_bar=state.d_bar, mode=mode, steady=steady
    )
    p_expected = p_next if mode == PERFECT_FORESIGHT else p
    sol = employment_from_demand(p, p_expected, state.m_tilde, state.d_bar, params)
    demand = generation_demand_decomposition(
        p, p_expected, sol.ll_notional, state.m_tilde, state.d_bar, params
    )

    a = params.alpha
    L_f, y = params.L_f, params.tech.y
    q_hat_total = L_f * p_expected * params.q
    disposable = (
        p * sol.ll_actual * y
        - p * params.g
        - L_f * state.d_bar
        - L_f * p * params.q
        + q_hat_total
    )
    m_tilde_next = (1.0 - a) * disposable - q_hat_total
    d_bar_next = p * params.d

    employment = sol.ll_actual / steady.l_star
    record = StepRecord(
        t=state.t,
        p=p,
        p_next=p_next,
        ll_notional=sol.ll_notional,
        ll_actual=sol.ll_actual,
        employment=employment,
        unemployment_rate=1.0 - employment / L_f,
        regime=sol.regime,
        y_nominal=p * sol.ll_actual * y,
        m=state.m_tilde + L_f * p * params.q,
        m_tilde=state.m_tilde,
        d_bar=state.d_bar,
        demand=demand,
    )
    next_state = SimState(
        t=state.t + 1, p=p_next, m_tilde=m_tilde_next, d_bar=d_bar_next
    )
    return next_state, record


def simulate(
    params: EconomyParams,
    initial: Optional[SimState] = None,
    horizon: int = 2000,
    mode: str = PERFECT_FORESIGHT,
    tol: float = 1e-8,
    divergence_bound: float = 10.0,
) -> Trajectory:
    """Iterate :func:`step` until convergence, divergence, or the horizon.

    Terminates Converged when the realized price is within ``tol`` relative
    of the benchmark, Diverged when it deviates by ``divergence_bound``
    relative, hits the price floor, or (perfect foresight) collapses into
    the region where the per-period solve is singular.  A singular solve at
    the caller-supplied initial state is an error and propagates.  With no
    ``initial`` the exact benchmark state is used and the run converges on
    its first record.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    if not tol > 0.0 or not divergence_bound > 0.0:
        raise ValueError("tol and divergence_bound must be positive")
    _check_mode(mode)
    steady = full_employment_steady_state(params)
    if initial is None:
        initial = SimState(
            t=0,
            p=steady.p_star,
            m_tilde=steady.m_tilde_star,
            d_bar=steady.d_bar_star,
        )
    state = initial
    records: list[StepRecord] = []
    classification = MAX_ITER
    p_star = steady.p_star
    floor = PRICE_FLOOR_REL * p_star
    for _ in range(horizon):
        try:
            state, record = step(state, params, mode=mode, steady=steady)
        except StepSingularError:
            if not records:
                raise
            classification = DIVERGED
            break
        records.append(record)
        deviation = abs(record.p_next - p_star)
        if record.p_next <= floor:
            classification = DIVERGED
            break
        if deviation <= tol * p_star:
            classification = CONVERGED
            break
        if deviation >= divergence_bound * p_star:
            classification = DIVERGED
            break
    return Trajectory(
        params=params,
        steady=steady,
        mode=mode,
        tol=tol,
        divergence_bound=divergence_bound,
        records=tuple(records),
        classification=classification,
    )


def numeric_fprime(
    params: EconomyParams,
    h: float = 1e-6,
    mode: str = PERFECT_FORESIGHT,
) -> float:
    """Central-difference slope of the price map at the benchmark price.

    The predetermined state is held at its benchmark values, matching the
    analytic derivation.  ``h`` is the relative step of the stencil.
    """
    if not 1e-8 <= h <= 1e-3:
        raise ValueError(f"h must lie in [1e-8, 1e-3], got {h}")
    steady = full_employment_steady_state(params)
    p_star = steady.p_star
    dp = h * p_star
    up = price_map(p_star + dp, params, mode=mode, steady=steady)
    down = price_map(p_star - dp, params, mode=mode, steady=steady)
    return (up - down) / (2.0 * dp)


def apply_shock(
    steady: SteadyState,
    price_factor: float = 1.0,
    net_savings_delta: float = 0.0,
    debt_factor: float = 1.0,
) -> SimState:
    """Initial state displaced from the benchmark.

    Multiplicative factors apply to the price and per-person debt; the
    net-savings shock is additive.  All defaults reproduce the benchmark
    exactly.
    """
    if not price_factor > 0.0:
        raise ValueError(f"price_factor must be positive, got {price_factor}")
    if not debt_factor > 0.0:
        raise ValueError(f"debt_factor must be positive, got {debt_factor}")
    return SimState(
        t=0,
        p=price_factor * steady.p_star,
        m_tilde=steady.m_tilde_star + net_savings_delta,
        d_bar=debt_factor * steady.d_bar_star,
    )


def price_map_classification(
    params: EconomyParams,
    price_factor: float = 1.01,
    horizon: int = 2000,
    tol: float = 1e-8,
    divergence_bound: float = 10.0,
    mode: str = PERFECT_FORESIGHT,
    steady: Optional[SteadyState] = None,
) -> str:
    """Classify the price map by iterating it from a shocked price.

    The predetermined state stays at benchmark values throughout, so this
    probes exactly the one-dimensional difference equation whose slope is
    the analytic f'(P*): convergence corresponds to a positive net-savings
    criterion and divergence to a negative one.  A collapse into the
    foresight-singular region counts as divergence; a singular solve at the
    initial price itself propagates.
    """
    if not price_factor > 0.0:
        raise ValueError(f"price_factor must be positive, got {price_factor}")
    if steady is None:
        steady = full_employment_steady_state(params)
    p = price_factor * steady.p_star
    p_star = steady.p_star
    floor = PRICE_FLOOR_REL * p_star
    for it in range(horizon):
        try:
            p = price_map(p, params, mode=mode, steady=steady)
        except StepSingularError:
            if it == 0:
                raise
            return DIVERGED
        if p <= floor:
            return DIVERGED
        if abs(p - p_star) <= tol * p_star:
            return CONVERGED
        if abs(p - p_star) >= divergence_bound * p_star:
            return DIVERGED
    return MAX_ITER
