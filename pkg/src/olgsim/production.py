"""Firm side: CES demand curve, markup pricing, and profits.

Each good is produced by one firm with constant labor productivity y.
Facing the isoelastic demand curve, the profit-maximizing price is a
constant markup over marginal cost, p = W / ((1 - mu) * y) with
mu = 1/sigma, and the implied real wage is (1 - mu) * y.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "Technology",
    "markup_price",
    "real_wage",
    "demand_curve",
    "inverse_demand",
    "profit_at",
    "aggregate_profit",
]


@dataclass(frozen=True)
class Technology:
    y: float      # output per unit of labor, > 0
    sigma: float  # demand elasticity faced by each firm, > 1

    def __post_init__(self) -> None:
        if not self.y > 0.0:
            raise ValueError(f"y must be positive, got {self.y}")
        if not self.sigma > 1.0:
            raise ValueError(f"sigma must exceed 1, got {self.sigma}")

    @property
    def mu(self) -> float:
        """Profit margin share 1/sigma."""
        return 1.0 / self.sigma


def markup_price(w_nominal: float, tech: Technology) -> float:
    """Profit-maximizing price W / ((1 - mu) * y)."""
    if not w_nominal > 0.0:
        raise ValueError(f"wage must be positive, got {w_nominal}")
    return w_nominal / ((1.0 - tech.mu) * tech.y)


def real_wage(tech: Technology) -> float:
    """Real wage (1 - mu) * y implied by markup pricing, W / markup_price(W)."""
    return (1.0 - tech.mu) * tech.y


def demand_curve(
    p_z: float, p_index: float, demand_nominal: float, sigma: float
) -> float:
    """Quantity demanded of one good: (p_z / P)^(-sigma) * Y / P."""
    if not p_z > 0.0:
        raise ValueError(f"p_z must be positive, got {p_z}")
    if not p_index > 0.0:
        raise ValueError(f"p_index must be positive, got {p_index}")
    if demand_nominal < 0.0:
        raise ValueError(f"demand must be non-negative, got {demand_nominal}")
    return (p_z / p_index) ** (-sigma) * demand_nominal / p_index


def inverse_demand(
    quantity: float, p_index: float, demand_nominal: float, sigma: float
) -> float:
    """Price at which the demand curve absorbs ``quantity``.

    Inverts demand_curve: p_z = P * (Y / (P * q))^(1/sigma).
    """
    if not quantity > 0.0:
        raise ValueError(f"quantity must be positive, got {quantity}")
    if not p_index > 0.0:
        raise ValueError(f"p_index must be positive, got {p_index}")
    if not demand_nominal > 0.0:
        raise ValueError(f"demand must be positive, got {demand_nominal}")
    return p_index * (demand_nominal / (p_index * quantity)) ** (1.0 / sigma)


def profit_at(
    labor_input: float,
    w_nominal: float,
    p_index: float,
    demand_nominal: float,
    tech: Technology,
) -> float:
    """Profit of one firm employing ``labor_input`` units of labor.

    Output labor_input * y is sold at the price the demand curve supports,
    so profit = p_z * labor_input * y - W * labor_input.  Zero input yields
    zero profit.
    """
    if labor_input < 0.0:
        raise ValueError(f"labor input must be non-negative, got {labor_input}")
    if labor_input == 0.0:
        return 0.0
    output = labor_input * tech.y
    p_z = inverse_demand(output, p_index, demand_nominal, tech.sigma)
    return p_z * output - w_nominal * labor_input


def aggregate_profit(
    p1: float, w_nominal: float, total_labor: float, tech: Technology
) -> float:
    """Economy-wide profit P1 * Ll * y - W * Ll.

    Complements the wage bill so that W*Ll + profit = P1*Ll*y exactly; at
    the markup price the profit share of revenue equals mu.
    """
    return p1 * total_labor * tech.y - w_nominal * total_labor
