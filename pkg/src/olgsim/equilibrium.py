"""Closing the model: fiscal identities, effective demand, the
under-employment equilibrium, the full-employment benchmark, and the
analytic stability classifier.

Conventions used throughout:

* All flow variables are nominal (currency) unless stated otherwise.
* ``m_tilde`` is the predetermined net savings of the currently old
  generation; their total spending power is m = m_tilde + L_f * P * q
  because the pension they receive is indexed to the current price.
* ``d_bar`` is the per-person nominal debt the currently young repay; it
  was fixed one period earlier when the goods were bought, so it does not
  revalue with the current price.  New childhood borrowing, government
  purchases, and pensions are real-indexed: D_hat = P*d, G = T = P*g,
  Q = P*q, and the expected pension Q_hat = P_next * q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CalibrationError, StepSingularError
from .preferences import HouseholdParams, expenditure_shares, labor_supply
from .production import Technology, markup_price, real_wage

__all__ = [
    "EconomyParams",
    "FiscalFlows",
    "SteadyState",
    "StabilityReport",
    "EmploymentSolution",
    "DemandComposition",
    "UNDER_EMPLOYMENT",
    "FULL_EMPLOYMENT",
    "EXCESS_DEMAND",
    "STABLE",
    "UNSTABLE",
    "MARGINAL",
    "unemployment_benefit_tax",
    "pension_tax",
    "fiscal_flows",
    "employment_from_demand",
    "effective_demand",
    "generation_demand_decomposition",
    "full_employment_steady_state",
    "analytic_fprime",
    "stability_classification",
]

# Regime labels for a solved period.
UNDER_EMPLOYMENT = "UnderEmployment"
FULL_EMPLOYMENT = "FullEmployment"
EXCESS_DEMAND = "ExcessDemand"

# Stability classifications of the full-employment benchmark.
STABLE = "Stable"
UNSTABLE = "Unstable"
MARGINAL = "Marginal"

PARAM_FIELDS = (
    "sigma", "theta", "eta", "gamma0", "kappa",
    "y", "L_f", "g", "d", "q", "gamma_adj", "W",
)


@dataclass(frozen=True)
class EconomyParams:
    """All structural, fiscal, and adjustment parameters of one economy."""

    household: HouseholdParams
    tech: Technology
    L_f: float        # labor force (persons), > 0
    g: float          # real government purchases (goods), >= 0
    d: float          # real childhood consumption per person (goods), >= 0
    q: float          # real pension per retiree (goods), >= 0
    gamma_adj: float  # price-adjustment speed (currency per labor gap), > 0
    W: float          # nominal wage anchoring the benchmark price, > 0

    def __post_init__(self) -> None:
        if not self.L_f > 0.0:
            raise ValueError(f"L_f must be positive, got {self.L_f}")
        for name in ("g", "d", "q"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")
        if not self.gamma_adj > 0.0:
            raise ValueError(f"gamma_adj must be positive, got {self.gamma_adj}")
        if not self.W > 0.0:
            raise ValueError(f"W must be positive, got {self.W}")
        if self.household.sigma != self.tech.sigma:
            raise ValueError(
                f"household.sigma ({self.household.sigma}) and tech.sigma "
                f"({self.tech.sigma}) must agree"
            )
        if self.household.d != self.d:
            raise ValueError(
                f"household.d ({self.household.d}) and d ({self.d}) must agree"
            )

    @classmethod
    def from_values(
        cls,
        *,
        sigma: float,
        theta: float,
        eta: float,
        gamma0: float,
        y: float,
        L_f: float,
        g: float,
        d: float,
        q: float,
        gamma_adj: float,
        W: float,
        kappa: float = 0.0,
    ) -> "EconomyParams":
        """Build from flat scalars, sharing sigma and d across components."""
        household = HouseholdParams(
            theta=theta, sigma=sigma, eta=eta, gamma0=gamma0, kappa=kappa, d=d
        )
        tech = Technology(y=y, sigma=sigma)
        return cls(
            household=household, tech=tech, L_f=L_f, g=g, d=d, q=q,
            gamma_adj=gamma_adj, W=W,
        )

    def as_values(self) -> dict[str, float]:
        """Flat scalar view, inverse of :meth:`from_values`."""
        return {
            "sigma": self.tech.sigma,
            "theta": self.household.theta,
            "eta": self.household.eta,
            "gamma0": self.household.gamma0,
            "kappa": self.household.kappa,
            "y": self.tech.y,
            "L_f": self.L_f,
            "g": self.g,
            "d": self.d,
            "q": self.q,
            "gamma_adj": self.gamma_adj,
            "W": self.W,
        }

    def with_value(self, name: str, value: float) -> "EconomyParams":
        """Copy with one flat parameter replaced (used by sweeps)."""
        values = self.as_values()
        if name not in values:
            raise ValueError(f"unknown parameter {name!r}")
        values[name] = value
        return EconomyParams.from_values(**values)

    @property
    def alpha(self) -> float:
        """Young generation's expenditure share at the benchmark relative
        price of one.  Constant under the Cobb-Douglas aggregator."""
        return expenditure_shares(self.household, 1.0)[0]


@dataclass(frozen=True)
class FiscalFlows:
    """Per-period fiscal transfers, all nominal."""

    theta_tax: float  # per employed person, finances unemployment benefits
    psi_tax: float    # per employed person, finances the pension
    r_benefit: float  # per unemployed person, equals the debt repayment
    t_tax: float      # total tax for government purchases, equals G


def unemployment_benefit_tax(L: float, L_f: float, d_nominal: float) -> float:
    """Per-employed tax Theta financing benefits for the L_f - L unemployed.

    Benefits equal the debt repayment d_nominal, so L*(d+Theta) = L_f*d.
    """
    if not 0.0 < L <= L_f:
        raise ValueError(f"need 0 < L <= L_f, got L={L}, L_f={L_f}")
    return d_nominal * (L_f - L) / L


def pension_tax(L: float, L_f: float, q_nominal: float) -> float:
    """Per-employed tax Psi financing the pension: L*Psi = L_f*Q."""
    if not 0.0 < L <= L_f:
        raise ValueError(f"need 0 < L <= L_f, got L={L}, L_f={L_f}")
    return L_f * q_nominal / L


def fiscal_flows(
    L: float, p_now: float, d_bar_nominal: float, params: EconomyParams
) -> FiscalFlows:
    """Assemble the period's fiscal transfers at employment L."""
    return FiscalFlows(
        theta_tax=unemployment_benefit_tax(L, params.L_f, d_bar_nominal),
        psi_tax=pension_tax(L, params.L_f, p_now * params.q),
        r_benefit=d_bar_nominal,
        t_tax=p_now * params.g,
    )


class EmploymentSolution(NamedTuple):
    ll_notional: float  # labor demand from goods-market clearing, uncapped
    ll_actual: float    # clamped to [0, full-employment labor]
    regime: str


def full_employment_labor(params: EconomyParams) -> float:
    """L_f times individual labor supply at the markup real wage."""
    omega = real_wage(params.tech)
    return params.L_f * labor_supply(omega, 1.0, params.household)


def demand_linear_terms(
    p_now: float, m_tilde: float, d_bar: float, params: EconomyParams
) -> tuple[float, float]:
    """Coefficients (A, B) of labor demand Ll = A + B * p_next.

    Substituting the fiscal rules into goods-market clearing and dividing
    by (1-alpha)*P*y gives

        A = [(1-a)Pg + L_f*P*d + (1-a)L_f*P*q + m_tilde - a*L_f*d_bar]
            / ((1-a)*P*y)
        B = a*L_f*q / ((1-a)*P*y)

    with a the expenditure share.  Only the expected-pension term carries
    the next price, which is what B multiplies.
    """
    if not p_now > 0.0:
        raise ValueError(f"price must be positive, got {p_now}")
    a = params.alpha
    L_f, y = params.L_f, params.tech.y
    denom = (1.0 - a) * p_now * y
    if not denom > 0.0:
        raise ValueError(f"non-positive demand denominator {denom}")
    numer = (
        (1.0 - a) * p_now * params.g
        + L_f * p_now * params.d
        + (1.0 - a) * L_f * p_now * params.q
        + m_tilde
        - a * L_f * d_bar
    )
    return numer / denom, a * L_f * params.q / denom


def employment_from_demand(
    p_now: float,
    p_next: float,
    m_tilde: float,
    d_bar_nominal: float,
    params: EconomyParams,
) -> EmploymentSolution:
    """Labor demand implied by goods-market clearing at given prices.

    ``p_next`` is the price at which the young value their future pension
    (the realized next price under perfect foresight, the current price
    under static expectations).  The notional value solves the clearing
    condition without constraint; actual employment is clamped to
    [0, L_f * l*].  Equality with the cap (within 1e-12 relative) is the
    full-employment regime; an excess notional value signals excess demand.
    """
    if not p_next > 0.0:
        raise ValueError(f"price must be positive, got {p_next}")
    a_term, b_term = demand_linear_terms(p_now, m_tilde, d_bar_nominal, params)
    ll_notional = a_term + b_term * p_next
    cap = full_employment_labor(params)
    tol = 1e-12 * max(1.0, cap)
    if ll_notional > cap + tol:
        return EmploymentSolution(ll_notional, cap, EXCESS_DEMAND)
    if ll_notional >= cap - tol:
        return EmploymentSolution(ll_notional, cap, FULL_EMPLOYMENT)
    return EmploymentSolution(ll_notional, max(ll_notional, 0.0), UNDER_EMPLOYMENT)


@dataclass(frozen=True)
class DemandComposition:
    """Nominal components of effective demand for one period."""

    young_spending: float      # working generation's consumption
    old_spending_m: float      # old generation's M (savings plus pension)
    childhood_spending: float  # next generation's borrowing-financed consumption
    government: float          # G = P * g

    @property
    def total(self) -> float:
        return (
            self.young_spending
            + self.old_spending_m
            + self.childhood_spending
            + self.government
        )


def generation_demand_decomposition(
    p_now: float,
    p_expected: float,
    ll: float,
    m_tilde: float,
    d_bar_nominal: float,
    params: EconomyParams,
) -> DemandComposition:
    """Split effective demand into its four generation components.

    ``ll`` is the period's labor input and ``p_expected`` the price used to
    value the young generation's future pension.  The young's spending is
    the share alpha of their disposable income: factor income P*ll*y minus
    the tax for G, debt repayment, and pension tax, plus the expected
    pension.
    """
    a = params.alpha
    L_f = params.L_f
    income = (
        p_now * ll * params.tech.y
        - p_now * params.g
        - L_f * d_bar_nominal
        + L_f * p_expected * params.q
        - L_f * p_now * params.q
    )
    return DemandComposition(
        young_spending=a * income,
        old_spending_m=m_tilde + L_f * p_now * params.q,
        childhood_spending=L_f * p_now * params.d,
        government=p_now * params.g,
    )


def effective_demand(
    p_now: float,
    p_next: float,
    m_tilde: float,
    d_bar_nominal: float,
    params: EconomyParams,
) -> float:
    """Nominal effective demand at the notional clearing solution.

    Computed as the sum of the generation components evaluated at the
    labor input that clears the goods market, so it equals
    P * ll_notional * y up to rounding.
    """
    sol = employment_from_demand(p_now, p_next, m_tilde, d_bar_nominal, params)
    comp = generation_demand_decomposition(
        p_now, p_next, sol.ll_notional, m_tilde, d_bar_nominal, params
    )
    return comp.total


@dataclass(frozen=True)
class SteadyState:
    """Full-employment benchmark of one economy."""

    p_star: float          # benchmark price W / ((1-mu) y)
    l_star: float          # individual hours at the markup real wage
    ll_star: float         # L_f * l_star
    m_star: float          # old generation's benchmark spending power M*
    m_tilde_star: float    # net savings M* - L_f * P* * q
    d_bar_star: float      # per-person nominal debt P* * d
    y_star_nominal: float  # nominal output P* * L_f * l* * y
    criterion: float       # M* - L_f P* q - alpha L_f P* d (net-savings test)
    denominator: float     # (1-alpha) P*^2 y - gamma alpha L_f P* q
    fprime: float          # price-map slope at P*; NaN if denominator <= 0


def full_employment_steady_state(params: EconomyParams) -> SteadyState:
    """Closed-form benchmark where employment equals the labor force.

    Requires full-employment output to exceed government purchases plus
    aggregate childhood consumption; otherwise the benchmark savings stock
    M* would be non-positive and a :class:`CalibrationError` is raised.
    The slope ``fprime`` of the price-adjustment map is filled in when its
    denominator is positive and is NaN otherwise (see
    :func:`analytic_fprime`).
    """
    a = params.alpha
    tech = params.tech
    p_star = markup_price(params.W, tech)
    l_star = labor_supply(real_wage(tech), 1.0, params.household)
    ll_star = params.L_f * l_star

    base = ll_star * tech.y - params.g - params.L_f * params.d
    if base <= 0.0:
        raise CalibrationError(
            f"full-employment output {ll_star * tech.y} does not cover "
            f"g + L_f*d = {params.g + params.L_f * params.d}"
        )
    m_star = (1.0 - a) * p_star * base
    m_tilde_star = m_star - params.L_f * p_star * params.q
    criterion = m_tilde_star - a * params.L_f * p_star * params.d
    denominator = (
        (1.0 - a) * p_star**2 * tech.y
        - params.gamma_adj * a * params.L_f * p_star * params.q
    )
    if denominator > 0.0:
        fprime = 1.0 - params.gamma_adj * criterion / denominator
    else:
        fprime = math.nan
    return SteadyState(
        p_star=p_star,
        l_star=l_star,
        ll_star=ll_star,
        m_star=m_star,
        m_tilde_star=m_tilde_star,
        d_bar_star=p_star * params.d,
        y_star_nominal=p_star * ll_star * tech.y,
        criterion=criterion,
        denominator=denominator,
        fprime=fprime,
    )


def analytic_fprime(
    params: EconomyParams, steady: SteadyState | None = None
) -> float:
    """Slope of the price-adjustment map at the benchmark price.

    f'(P*) = 1 - gamma * (M* - L_f P* q - alpha L_f P* d)
                 / ((1-alpha) P*^2 y - gamma alpha L_f P* q).

    The denominator must be positive; the price map is contracting exactly
    when the numerator criterion is positive.
    """
    if steady is None:
        steady = full_employment_steady_state(params)
    if not steady.denominator > 0.0:
        raise StepSingularError(
            f"price-map slope undefined: denominator {steady.denominator} <= 0 "
            f"(gamma_adj too large relative to the pension feedback)"
        )
    return 1.0 - params.gamma_adj * steady.criterion / steady.denominator


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of the net-savings stability test at full employment."""

    criterion: float           # M* - L_f P* q - alpha L_f P* d
    fprime: float              # slope of the price map; NaN when uncertified
    classification: str        # Stable | Unstable | Marginal
    fprime_positive: bool      # slope in the monotone-adjustment regime
    denominator_positive: bool # slope formula well defined
    overshoot: bool            # slope negative: oscillatory adjustment
    marginal_tolerance: float  # |criterion| at or below this is Marginal


def stability_classification(params: EconomyParams) -> StabilityReport:
    """Classify the full-employment benchmark by the net-savings criterion.

    Stable when the old generation's net savings exceed the young's debt
    weighted by the childhood-consumption propensity (criterion > 0, slope
    inside the unit interval); Unstable when debt dominates.  A criterion
    within the scale-free tolerance is Marginal.  When the slope formula's
    denominator is non-positive the slope cannot be certified
    (``denominator_positive`` is False, ``fprime`` is NaN) and the
    classification falls back to the criterion sign alone.
    """
    steady = full_employment_steady_state(params)
    a = params.alpha
    tol = 1e-9 * (1.0 - a) * steady.p_star**2 * params.tech.y
    fprime = steady.fprime
    den_pos = steady.denominator > 0.0

    if abs(steady.criterion) <= tol:
        classification = MARGINAL
    elif den_pos:
        classification = STABLE if abs(fprime) < 1.0 else UNSTABLE
    else:
        classification = STABLE if steady.criterion > 0.0 else UNSTABLE

    return StabilityReport(
        criterion=steady.criterion,
        fprime=fprime,
        classification=classification,
        fprime_positive=bool(den_pos and fprime > 0.0),
        denominator_positive=den_pos,
        overshoot=bool(den_pos and fprime < 0.0),
        marginal_tolerance=tol,
    )
