"""Walkthrough 1: the full-employment benchmark and its stability test.

Two economies that differ only in pension generosity, childhood debt, and
adjustment speed.  In the first, the old generation's net savings fall
short of the young generation's debt weighted by the propensity to consume
out of it: the real balance effect of a price decline is negative, and the
full-employment benchmark is unstable.  In the second, net savings
dominate and the benchmark is stable.

Run:  python demos/01_benchmark_and_stability.py
"""

from olgsim import (
    EconomyParams,
    analytic_fprime,
    full_employment_steady_state,
    numeric_fprime,
    stability_classification,
)

BAR = "=" * 64

ECONOMIES = {
    "high pension & debt (reference)": dict(
        sigma=2.0, theta=0.5, eta=1.0, gamma0=1.0, y=1.0, L_f=100.0,
        g=5.0, d=0.1, q=0.05, gamma_adj=0.1, W=1.0,
    ),
    "low pension & debt (stable)": dict(
        sigma=2.0, theta=0.5, eta=1.0, gamma0=1.0, y=1.0, L_f=100.0,
        g=5.0, d=0.01, q=0.01, gamma_adj=0.01, W=1.0,
    ),
}


def describe(name: str, values: dict) -> None:
    params = EconomyParams.from_values(**values)
    steady = full_employment_steady_state(params)
    report = stability_classification(params)

    print(BAR)
    print(f"  {name}")
    print(BAR)
    print(f"  markup price P*              : {steady.p_star:.6g}")
    print(f"  real wage (1 - 1/sigma) y    : {params.W / steady.p_star:.6g}")
    print(f"  hours per worker l*          : {steady.l_star:.6g}")
    print(f"  full employment L_f l*       : {steady.ll_star:.6g}")
    print(f"  old generation funds M*      : {steady.m_star:.6g}")
    print(f"  net savings M~*              : {steady.m_tilde_star:.6g}")
    print(f"  per-person debt P* d         : {steady.d_bar_star:.6g}")
    print()
    print(f"  net-savings criterion        : {report.criterion:+.6g}")
    print(f"  price-map slope f'(P*)       : {report.fprime:.6f}")
    print(f"  finite-difference check      : {numeric_fprime(params):.6f}")
    print(f"  classification               : {report.classification}")
    interpretation = (
        "a wage/price decline raises employment back toward full employment"
        if report.classification == "Stable"
        else "a wage/price decline reduces employment further: the slump feeds itself"
    )
    print(f"  -> {interpretation}")
    print()
    assert abs(numeric_fprime(params) - analytic_fprime(params)) < 1e-6


def main() -> None:
    for name, values in ECONOMIES.items():
        describe(name, values)
    print("Both slopes agree with their finite-difference checks to 1e-6.")


if __name__ == "__main__":
    main()
