import numpy as np
import pytest

from olgsim import (
    Technology,
    aggregate_profit,
    demand_curve,
    inverse_demand,
    markup_price,
    profit_at,
    real_wage,
)


class TestMarkupPrice:
    def test_hand_evaluation(self):
        assert markup_price(1.0, Technology(y=1.0, sigma=2.0)) == pytest.approx(
            2.0, rel=1e-14
        )

    def test_normalization(self):
        tech = Technology(y=1.7, sigma=3.0)
        w = (1.0 - tech.mu) * tech.y
        assert markup_price(w, tech) == pytest.approx(1.0, rel=1e-14)

    def test_price_falls_toward_marginal_cost_as_sigma_grows(self):
        assert markup_price(1.0, Technology(y=1.0, sigma=2.0)) == pytest.approx(2.0)
        assert markup_price(1.0, Technology(y=1.0, sigma=10.0)) == pytest.approx(
            10.0 / 9.0, rel=1e-14
        )

    def test_foc_identity(self):
        rng = np.random.default_rng(5)
        for _ in range(40):
            w = rng.uniform(0.2, 4.0)
            tech = Technology(y=rng.uniform(0.2, 4.0), sigma=rng.uniform(1.2, 8.0))
            p = markup_price(w, tech)
            residual = p * (1.0 - 1.0 / tech.sigma) * tech.y - w
            assert abs(residual) <= 1e-12 * max(1.0, w)

    def test_rejects_nonpositive_wage(self):
        with pytest.raises(ValueError):
            markup_price(0.0, Technology(y=1.0, sigma=2.0))


class TestRealWage:
    def test_hand_evaluations(self):
        assert real_wage(Technology(y=1.0, sigma=2.0)) == pytest.approx(0.5)
        assert real_wage(Technology(y=3.0, sigma=4.0)) == pytest.approx(2.25)

    def test_consistency_with_markup_price(self):
        tech = Technology(y=1.9, sigma=2.7)
        for w in (0.3, 1.0, 5.0):
            assert w / markup_price(w, tech) == pytest.approx(
                real_wage(tech), rel=1e-15
            )


class TestDemandCurve:
    def test_symmetric_case(self):
        assert demand_curve(2.0, 2.0, 50.0, 2.0) == pytest.approx(25.0, rel=1e-14)

    def test_zero_demand(self):
        assert demand_curve(2.0, 2.0, 0.0, 2.0) == 0.0

    def test_double_price(self):
        assert demand_curve(4.0, 2.0, 50.0, 2.0) == pytest.approx(6.25, rel=1e-14)

    def test_inverse_round_trip(self):
        rng = np.random.default_rng(9)
        for _ in range(40):
            p_index = rng.uniform(0.5, 3.0)
            demand = rng.uniform(5.0, 80.0)
            sigma = rng.uniform(1.3, 6.0)
            q = rng.uniform(0.5, 30.0)
            p_z = inverse_demand(q, p_index, demand, sigma)
            assert demand_curve(p_z, p_index, demand, sigma) == pytest.approx(
                q, rel=1e-10
            )


class TestProfit:
    def test_zero_labor_zero_profit(self):
        tech = Technology(y=1.0, sigma=2.0)
        assert profit_at(0.0, 1.0, 2.0, 50.0, tech) == 0.0

    def test_profit_share_at_markup_optimum(self):
        tech = Technology(y=1.3, sigma=2.5)
        w, p_index, demand = 0.9, 1.8, 60.0
        p_opt = markup_price(w, tech)
        ll_opt = demand_curve(p_opt, p_index, demand, tech.sigma) / tech.y
        profit = profit_at(ll_opt, w, p_index, demand, tech)
        revenue = p_opt * ll_opt * tech.y
        assert profit == pytest.approx(tech.mu * revenue, rel=1e-12)

    def test_grid_argmax_matches_markup_solution(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            tech = Technology(y=rng.uniform(0.5, 2.0), sigma=rng.uniform(1.5, 5.0))
            w = rng.uniform(0.5, 2.0)
            p_index = rng.uniform(0.5, 3.0)
            demand = rng.uniform(10.0, 100.0)
            p_opt = markup_price(w, tech)
            ll_opt = demand_curve(p_opt, p_index, demand, tech.sigma) / tech.y
            grid = np.linspace(0.0, 2.0 * ll_opt, 20_001)
            # vectorized replica of profit_at over the grid
            output = grid[1:] * tech.y
            p_z = p_index * (demand / (p_index * output)) ** (1.0 / tech.sigma)
            profits = np.concatenate(([0.0], p_z * output - w * grid[1:]))
            best = grid[int(np.argmax(profits))]
            assert abs(best - ll_opt) <= grid[1] - grid[0]
            # the vectorized evaluation agrees with profit_at pointwise
            for idx in (1, 5_000, 10_000, 15_000, 20_000):
                assert profits[idx] == pytest.approx(
                    profit_at(grid[idx], w, p_index, demand, tech), rel=1e-12
                )


class TestAggregateProfit:
    def test_hand_evaluation(self):
        tech = Technology(y=1.0, sigma=2.0)
        assert aggregate_profit(2.0, 1.0, 25.0, tech) == pytest.approx(25.0)

    def test_zero_labor(self):
        assert aggregate_profit(2.0, 1.0, 0.0, Technology(y=1.0, sigma=2.0)) == 0.0

    def test_output_market_adding_up(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            tech = Technology(y=rng.uniform(0.3, 3.0), sigma=rng.uniform(1.3, 6.0))
            p1 = rng.uniform(0.3, 4.0)
            w = rng.uniform(0.3, 4.0)
            ll = rng.uniform(0.0, 50.0)
            assert w * ll + aggregate_profit(p1, w, ll, tech) == pytest.approx(
                p1 * ll * tech.y, rel=1e-14
            )

    def test_profit_share_identity_at_markup_price(self):
        tech = Technology(y=1.0, sigma=2.0)
        w = 1.0
        p1 = markup_price(w, tech)
        ll = 25.0
        assert aggregate_profit(p1, w, ll, tech) == pytest.approx(
            tech.mu * p1 * ll * tech.y, rel=1e-12
        )
