"""Household side: two-period consumption allocation, CES demand for
individual goods, and labor supply from the first-order condition.

Households value a Cobb-Douglas aggregate of working-period and retirement
consumption baskets, C1^theta * C2^(1-theta) * D^kappa, net of an isoelastic
labor disutility gamma0 * l^(1+eta) / (1+eta).  Each basket is a CES
aggregate over a continuum of goods with elasticity sigma.  Under this
instantiation the indirect utility of real income I at relative price
rho = P2/P1 is linear, B(rho) * I * D^kappa, with

    B(rho) = theta^theta * ((1-theta)/rho)^(1-theta),

which yields closed forms for the expenditure share, labor supply, and its
slope.  All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import BracketError

__all__ = [
    "HouseholdParams",
    "PricePair",
    "marginal_utility_of_income",
    "expenditure_shares",
    "consumption_demand",
    "good_demand",
    "price_index",
    "labor_disutility",
    "labor_disutility_slope",
    "labor_disutility_curvature",
    "labor_supply",
    "labor_supply_numeric",
    "labor_supply_slope",
    "indirect_utility",
]


@dataclass(frozen=True)
class HouseholdParams:
    theta: float        # expenditure share on working-period consumption, in (0,1)
    sigma: float        # elasticity of substitution across goods, > 1
    eta: float          # labor-disutility curvature, > 0
    gamma0: float       # labor-disutility scale, > 0
    kappa: float = 0.0  # childhood-consumption utility exponent, >= 0
    d: float = 0.0      # childhood consumption per person (real goods), >= 0

    def __post_init__(self) -> None:
        if not 0.0 < self.theta < 1.0:
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")
        if not self.sigma > 1.0:
            raise ValueError(f"sigma must exceed 1, got {self.sigma}")
        if not self.eta > 0.0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if not self.gamma0 > 0.0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")
        if self.kappa < 0.0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")
        if self.d < 0.0:
            raise ValueError(f"d must be non-negative, got {self.d}")


@dataclass(frozen=True)
class PricePair:
    """Basket prices for the working and retirement periods."""

    p1: float  # price of the working-period basket
    p2: float  # (expected) price of the retirement-period basket

    def __post_init__(self) -> None:
        if not self.p1 > 0.0:
            raise ValueError(f"p1 must be positive, got {self.p1}")
        if not self.p2 > 0.0:
            raise ValueError(f"p2 must be positive, got {self.p2}")

    @property
    def rho(self) -> float:
        """Relative price p2/p1 (gross expected inflation)."""
        return self.p2 / self.p1


def marginal_utility_of_income(prefs: HouseholdParams, rho: float) -> float:
    """B(rho) = theta^theta * ((1-theta)/rho)^(1-theta).

    Marginal indirect utility of real income given the relative price rho;
    constant in income because the two-period aggregator is homothetic.
    """
    if not rho > 0.0:
        raise ValueError(f"rho must be positive, got {rho}")
    t = prefs.theta
    return t**t * ((1.0 - t) / rho) ** (1.0 - t)


def expenditure_shares(prefs: HouseholdParams, rho: float) -> tuple[float, float]:
    """Fraction of lifetime spending on each period's basket.

    Returns (alpha, 1 - alpha).  Under the Cobb-Douglas aggregator alpha
    equals theta for every relative price; this function is the extension
    point for general homothetic preferences where alpha varies with rho.
    """
    if not rho > 0.0:
        raise ValueError(f"rho must be positive, got {rho}")
    return prefs.theta, 1.0 - prefs.theta


def consumption_demand(
    income_nominal: float, prices: PricePair, alpha: float
) -> tuple[float, float]:
    """Basket demands (c1, c2) from splitting nominal income by alpha.

    c1 = alpha * income / p1 and c2 = (1-alpha) * income / p2, so spending
    adds up to income exactly.
    """
    if income_nominal < 0.0:
        raise ValueError(f"income must be non-negative, got {income_nominal}")
    c1 = alpha * income_nominal / prices.p1
    c2 = (1.0 - alpha) * income_nominal / prices.p2
    return c1, c2


def good_demand(p_z: float, p_index: float, expenditure: float, sigma: float) -> float:
    """CES demand for one good: (p_z / P)^(-sigma) * expenditure / P."""
    if not p_z > 0.0:
        raise ValueError(f"p_z must be positive, got {p_z}")
    if not p_index > 0.0:
        raise ValueError(f"p_index must be positive, got {p_index}")
    if expenditure < 0.0:
        raise ValueError(f"expenditure must be non-negative, got {expenditure}")
    return (p_z / p_index) ** (-sigma) * expenditure / p_index


def price_index(
    prices_of_goods: Union[Callable[[np.ndarray], np.ndarray], Sequence[float], np.ndarray],
    sigma: float,
    grid_size: int = 1024,
) -> float:
    """CES price index (integral of p(z)^(1-sigma) over [0,1])^(1/(1-sigma)).

    ``prices_of_goods`` is either a vectorized function of z evaluated at
    the midpoints of a uniform grid on [0,1], or an array of prices already
    sampled on such a grid.  Midpoint quadrature is exact for the symmetric
    (constant-price) case and for step functions aligned with the grid.
    """
    if callable(prices_of_goods):
        z = (np.arange(grid_size) + 0.5) / grid_size
        samples = np.asarray(prices_of_goods(z), dtype=float)
    else:
        samples = np.asarray(prices_of_goods, dtype=float)
    if samples.size == 0:
        raise ValueError("price sample is empty")
    if np.any(samples <= 0.0):
        raise ValueError("all sampled prices must be positive")
    # log-mean formulation keeps the constant-price case exact to the ulp
    exponent = 1.0 - sigma
    mean_pow = np.mean(np.exp(exponent * np.log(samples)))
    return float(mean_pow ** (1.0 / exponent))


def labor_disutility(l: float, prefs: HouseholdParams) -> float:
    """Gamma(l) = gamma0 * l^(1+eta) / (1+eta)."""
    if l < 0.0:
        raise ValueError(f"labor must be non-negative, got {l}")
    return prefs.gamma0 * l ** (1.0 + prefs.eta) / (1.0 + prefs.eta)


def labor_disutility_slope(l: float, prefs: HouseholdParams) -> float:
    """Gamma'(l) = gamma0 * l^eta."""
    if l < 0.0:
        raise ValueError(f"labor must be non-negative, got {l}")
    return prefs.gamma0 * l**prefs.eta


def labor_disutility_curvature(l: float, prefs: HouseholdParams) -> float:
    """Gamma''(l) = gamma0 * eta * l^(eta-1)."""
    if l < 0.0:
        raise ValueError(f"labor must be non-negative, got {l}")
    return prefs.gamma0 * prefs.eta * l ** (prefs.eta - 1.0)


def labor_supply(omega: float, rho: float, prefs: HouseholdParams) -> float:
    """Hours solving the first-order condition B(rho)*omega = Gamma'(l).

    With the isoelastic disutility the closed form is
    l = (B(rho) * omega / gamma0)^(1/eta).
    """
    if not omega > 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    b = marginal_utility_of_income(prefs, rho)
    return (b * omega / prefs.gamma0) ** (1.0 / prefs.eta)


def labor_supply_numeric(omega: float, rho: float, prefs: HouseholdParams) -> float:
    """Bisection solution of B(rho)*omega - Gamma'(l) = 0.

    Independent check on :func:`labor_supply`: brackets the root by doubling
    the upper end (Gamma' is strictly increasing, so a sign change is
    guaranteed once Gamma'(hi) exceeds the target), then bisects until the
    residual satisfies |B*omega - Gamma'(l)| <= 1e-12 * max(1, B*omega).
    """
    if not omega > 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    target = marginal_utility_of_income(prefs, rho) * omega
    tol = 1e-12 * max(1.0, target)

    lo, hi = 1e-30, 1.0
    for _ in range(64):
        if labor_disutility_slope(hi, prefs) >= target:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise BracketError(
            f"no bracket for labor supply after 64 doublings (omega={omega})"
        )

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        resid = target - labor_disutility_slope(mid, prefs)
        if abs(resid) <= tol:
            return mid
        if resid > 0.0:  # Gamma'(mid) below target: root lies above
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def labor_supply_slope(omega: float, rho: float, prefs: HouseholdParams) -> float:
    """dl/domega at the optimum.

    The general expression is (phi_I + phi_II * omega * l) /
    (Gamma''(l) - phi_II * omega^2); with linear indirect utility the
    second derivative phi_II vanishes and the slope reduces to
    B(rho) / Gamma''(l).
    """
    l = labor_supply(omega, rho, prefs)
    curvature = labor_disutility_curvature(l, prefs)
    if not curvature > 0.0:
        raise ValueError(
            f"labor disutility must be strictly convex at the optimum "
            f"(Gamma''={curvature} at l={l})"
        )
    return marginal_utility_of_income(prefs, rho) / curvature


def indirect_utility(
    income_real: float,
    rho: float,
    l: float,
    d_childhood: float,
    prefs: HouseholdParams,
) -> float:
    """Value of real income at hours l: B(rho)*I*d^kappa - Gamma(l).

    The unemployed case is the same expression evaluated at l = 0.
    """
    if income_real < 0.0:
        raise ValueError(f"income must be non-negative, got {income_real}")
    scale = math.pow(d_childhood, prefs.kappa) if prefs.kappa != 0.0 else 1.0
    return (
        marginal_utility_of_income(prefs, rho) * income_real * scale
        - labor_disutility(l, prefs)
    )
