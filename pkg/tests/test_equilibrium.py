import math

import numpy as np
import pytest

from olgsim import (
    EXCESS_DEMAND,
    FULL_EMPLOYMENT,
    MARGINAL,
    STABLE,
    UNDER_EMPLOYMENT,
    UNSTABLE,
    CalibrationError,
    EconomyParams,
    StepSingularError,
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
from conftest import REFERENCE_VALUES, STABLE_VALUES


class TestFiscalIdentities:
    def test_benefit_tax_hand_evaluation(self):
        assert unemployment_benefit_tax(80.0, 100.0, 0.2) == pytest.approx(
            0.05, rel=1e-14
        )

    def test_full_employment_means_no_benefit_tax(self):
        assert unemployment_benefit_tax(100.0, 100.0, 0.37) == 0.0

    def test_benefit_identity_exact(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            L_f = rng.uniform(10.0, 500.0)
            L = rng.uniform(1e-6, L_f)
            d = rng.uniform(0.0, 2.0)
            theta = unemployment_benefit_tax(L, L_f, d)
            assert abs(L * (d + theta) - L_f * d) <= 1e-15 * max(1.0, L_f * d)

    def test_pension_tax_hand_evaluations(self):
        assert pension_tax(100.0, 100.0, 0.1) == pytest.approx(0.1, rel=1e-14)
        assert pension_tax(50.0, 100.0, 0.1) == pytest.approx(0.2, rel=1e-14)

    def test_pension_identity_exact(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            L_f = rng.uniform(10.0, 500.0)
            L = rng.uniform(1e-6, L_f)
            q = rng.uniform(0.0, 2.0)
            assert L * pension_tax(L, L_f, q) == pytest.approx(L_f * q, abs=1e-12)

    def test_degenerate_economy_rejected(self):
        with pytest.raises(ValueError):
            unemployment_benefit_tax(0.0, 100.0, 0.1)
        with pytest.raises(ValueError):
            pension_tax(0.0, 100.0, 0.1)

    def test_fiscal_flows_composition(self, reference_params):
        flows = fiscal_flows(80.0, 2.0, 0.2, reference_params)
        assert flows.theta_tax == pytest.approx(0.05)
        assert flows.psi_tax == pytest.approx(100.0 * 2.0 * 0.05 / 80.0)
        assert flows.r_benefit == 0.2
        assert flows.t_tax == pytest.approx(10.0)


class TestEmploymentFromDemand:
    def test_steady_inputs_give_full_employment(self, reference_params):
        ss = full_employment_steady_state(reference_params)
        sol = employment_from_demand(
            ss.p_star, ss.p_star, ss.m_tilde_star, ss.d_bar_star, reference_params
        )
        assert sol.ll_notional == pytest.approx(25.0, rel=1e-10)
        assert sol.ll_actual == pytest.approx(ss.ll_star, rel=1e-10)
        assert sol.regime == FULL_EMPLOYMENT

    def test_one_unit_less_savings_drops_employment_by_one(self, reference_params):
        # (1 - alpha) P* y = 1 in the reference economy
        ss = full_employment_steady_state(reference_params)
        sol = employment_from_demand(
            ss.p_star, ss.p_star, ss.m_tilde_star - 1.0, ss.d_bar_star,
            reference_params,
        )
        assert sol.ll_notional == pytest.approx(24.0, rel=1e-10)
        assert sol.regime == UNDER_EMPLOYMENT

    def test_excess_demand_caps_employment(self, reference_params):
        ss = full_employment_steady_state(reference_params)
        sol = employment_from_demand(
            ss.p_star, ss.p_star, ss.m_tilde_star + 5.0, ss.d_bar_star,
            reference_params,
        )
        assert sol.ll_notional > ss.ll_star
        assert sol.ll_actual == ss.ll_star
        assert sol.regime == EXCESS_DEMAND

    def test_negative_notional_clamped_to_zero(self, reference_params):
        ss = full_employment_steady_state(reference_params)
        sol = employment_from_demand(
            ss.p_star, ss.p_star, ss.m_tilde_star - 100.0, ss.d_bar_star,
            reference_params,
        )
        assert sol.ll_notional < 0.0
        assert sol.ll_actual == 0.0

    def test_rejects_nonpositive_prices(self, reference_params):
        with pytest.raises(ValueError):
            employment_from_demand(0.0, 2.0, 0.0, 0.2, reference_params)
        with pytest.raises(ValueError):
            employment_from_demand(2.0, -1.0, 0.0, 0.2, reference_params)


class TestEffectiveDemand:
    def test_steady_state_value(self, reference_params):
        ss = full_employment_steady_state(reference_params)
        y = effective_demand(
            ss.p_star, ss.p_star, ss.m_tilde_star, ss.d_bar_star, reference_params
        )
        assert y == pytest.approx(50.0, rel=1e-10)

    def test_decomposition_adds_up(self, reference_params):
        ss = full_employment_steady_state(reference_params)
        for m_tilde in (ss.m_tilde_star, ss.m_tilde_star - 3.0, ss.m_tilde_star + 2.0):
            sol = employment_from_demand(
                ss.p_star, ss.p_star, m_tilde, ss.d_bar_star, reference_params
            )
            comp = generation_demand_decomposition(
                ss.p_star, ss.p_star, sol.ll_notional, m_tilde, ss.d_bar_star,
                reference_params,
            )
            y = effective_demand(
                ss.p_star, ss.p_star, m_tilde, ss.d_bar_star, reference_params
            )
            assert comp.total == pytest.approx(y, rel=1e-12)

    def test_reference_components(self, reference_params):
        ss = full_employment_steady_state(reference_params)
        comp = generation_demand_decomposition(
            ss.p_star, ss.p_star, ss.ll_star, ss.m_tilde_star, ss.d_bar_star,
            reference_params,
        )
        assert comp.old_spending_m == pytest.approx(10.0, rel=1e-10)
        assert comp.government == pytest.approx(10.0, rel=1e-14)
        assert comp.childhood_spending == pytest.approx(20.0, rel=1e-14)
        assert comp.young_spending == pytest.approx(10.0, rel=1e-9)


class TestSteadyState:
    def test_reference_benchmark(self, reference_params):
        ss = full_employment_steady_state(reference_params)
        assert ss.p_star == pytest.approx(2.0, rel=1e-12)
        assert ss.l_star == pytest.approx(0.25, rel=1e-12)
        assert ss.ll_star == pytest.approx(25.0, rel=1e-12)
        assert ss.m_star == pytest.approx(10.0, rel=1e-12)
        assert abs(ss.m_tilde_star) <= 1e-12
        assert ss.d_bar_star == pytest.approx(0.2, rel=1e-14)
        assert ss.y_star_nominal == pytest.approx(50.0, rel=1e-12)
        assert ss.criterion == pytest.approx(-10.0, rel=1e-12)

    def test_stable_variant_benchmark(self, stable_params):
        ss = full_employment_steady_state(stable_params)
        assert ss.m_star == pytest.approx(19.0, rel=1e-12)
        assert ss.m_tilde_star == pytest.approx(17.0, rel=1e-12)
        assert ss.criterion == pytest.approx(16.0, rel=1e-12)
        assert ss.denominator == pytest.approx(1.99, rel=1e-12)
        assert ss.fprime == pytest.approx(1.0 - 0.16 / 1.99, abs=1e-9)

    def test_infeasible_calibration_raises(self):
        values = dict(REFERENCE_VALUES, g=30.0)
        with pytest.raises(CalibrationError):
            full_employment_steady_state(EconomyParams.from_values(**values))


class TestAnalyticFprime:
    def test_reference_slope(self, reference_params):
        assert analytic_fprime(reference_params) == pytest.approx(5.0 / 3.0, rel=1e-12)

    def test_slow_adjustment_limit_from_stable_side(self):
        # criterion > 0: as gamma_adj shrinks the slope rises toward 1 from below
        previous = -math.inf
        for gamma in (0.05, 0.01, 0.001, 1e-5):
            params = EconomyParams.from_values(
                **dict(STABLE_VALUES, gamma_adj=gamma)
            )
            fp = analytic_fprime(params)
            assert previous < fp < 1.0
            previous = fp

    def test_singular_denominator_raises(self):
        params = EconomyParams.from_values(**dict(REFERENCE_VALUES, gamma_adj=1.0))
        with pytest.raises(StepSingularError):
            analytic_fprime(params)


class TestStabilityClassification:
    def test_reference_is_unstable(self, reference_params):
        report = stability_classification(reference_params)
        assert report.classification == UNSTABLE
        assert report.criterion == pytest.approx(-10.0, rel=1e-12)
        assert report.fprime_positive and report.denominator_positive
        assert not report.overshoot

    def test_stable_variant(self, stable_params):
        report = stability_classification(stable_params)
        assert report.classification == STABLE
        assert report.fprime == pytest.approx(1.0 - 0.16 / 1.99, abs=1e-9)

    def test_marginal_boundary(self):
        # with theta=0.5, g=5: criterion = 20 - 200*(d + q), zero at d + q = 0.1
        values = dict(REFERENCE_VALUES, d=0.06, q=0.04, gamma_adj=0.05)
        report = stability_classification(EconomyParams.from_values(**values))
        assert report.classification == MARGINAL
        assert report.fprime == pytest.approx(1.0, abs=1e-12)

    def test_uncertified_slope_falls_back_to_criterion_sign(self):
        params = EconomyParams.from_values(**dict(REFERENCE_VALUES, gamma_adj=1.0))
        report = stability_classification(params)
        assert not report.denominator_positive
        assert math.isnan(report.fprime)
        assert report.classification == UNSTABLE

    def test_sign_equivalence_on_random_draws(self):
        rng = np.random.default_rng(41)
        checked = 0
        while checked < 40:
            values = dict(
                REFERENCE_VALUES,
                theta=rng.uniform(0.35, 0.65),
                sigma=rng.uniform(1.5, 5.0),
                q=rng.uniform(0.0, 0.06),
                d=rng.uniform(0.0, 0.12),
                gamma_adj=rng.uniform(0.01, 0.3),
            )
            try:
                params = EconomyParams.from_values(**values)
                ss = full_employment_steady_state(params)
            except CalibrationError:
                continue
            if ss.denominator <= 0.0 or abs(ss.criterion) < 1e-9:
                continue
            assert (ss.fprime > 1.0) == (ss.criterion < 0.0)
            checked += 1

    def test_criterion_monotone_in_pension_and_debt(self):
        base = EconomyParams.from_values(**STABLE_VALUES)
        crit = lambda p: full_employment_steady_state(p).criterion
        for name in ("q", "d"):
            values = [crit(base.with_value(name, v)) for v in (0.0, 0.02, 0.05)]
            assert values[0] > values[1] > values[2]


class TestEconomyParams:
    def test_with_value_round_trip(self, reference_params):
        tweaked = reference_params.with_value("q", 0.01)
        assert tweaked.q == 0.01
        assert tweaked.household.theta == reference_params.household.theta
        assert tweaked.as_values() == {**reference_params.as_values(), "q": 0.01}

    def test_sigma_shared_between_components(self, reference_params):
        tweaked = reference_params.with_value("sigma", 3.0)
        assert tweaked.household.sigma == tweaked.tech.sigma == 3.0

    def test_unknown_parameter_rejected(self, reference_params):
        with pytest.raises(ValueError):
            reference_params.with_value("zeta", 1.0)

    def test_invalid_values_rejected(self):
        with pytest.raises(ValueError):
            EconomyParams.from_values(**dict(REFERENCE_VALUES, sigma=0.5))
        with pytest.raises(ValueError):
            EconomyParams.from_values(**dict(REFERENCE_VALUES, L_f=0.0))
