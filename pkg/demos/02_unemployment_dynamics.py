"""Walkthrough 2: shock each economy into unemployment and watch the
price-adjustment process.

The stable economy is shocked to a price 1% above the benchmark, which
depresses demand and creates involuntary unemployment; falling wages and
prices then restore full employment.  The unstable economy is shocked 1%
below the benchmark: there the *negative* real balance effect means the
deflation deepens the slump, and unemployment ratchets up until the model
leaves its valid region.

Outputs CSV trajectories and a two-panel figure under demos/output/.

Run:  python demos/02_unemployment_dynamics.py
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from olgsim import (
    EconomyParams,
    apply_shock,
    full_employment_steady_state,
    simulate,
)
from olgsim.scenario_io import emit_trajectory_csv

OUT = Path(__file__).resolve().parent / "output"

RUNS = [
    (
        "stable",
        dict(sigma=2.0, theta=0.5, eta=1.0, gamma0=1.0, y=1.0, L_f=100.0,
             g=5.0, d=0.01, q=0.01, gamma_adj=0.01, W=1.0),
        1.01,
    ),
    (
        "unstable",
        dict(sigma=2.0, theta=0.5, eta=1.0, gamma0=1.0, y=1.0, L_f=100.0,
             g=5.0, d=0.1, q=0.05, gamma_adj=0.1, W=1.0),
        0.99,
    ),
]


def main() -> None:
    OUT.mkdir(exist_ok=True)
    fig, (ax_p, ax_u) = plt.subplots(1, 2, figsize=(10, 4))

    for name, values, factor in RUNS:
        params = EconomyParams.from_values(**values)
        steady = full_employment_steady_state(params)
        trajectory = simulate(
            params, initial=apply_shock(steady, price_factor=factor)
        )
        csv_path = OUT / f"{name}_trajectory.csv"
        emit_trajectory_csv(trajectory, csv_path)

        last = trajectory.records[-1]
        print(f"{name}: shock x{factor} -> {trajectory.classification} "
              f"after {len(trajectory.records)} periods "
              f"(final unemployment {last.unemployment_rate:.1%})")
        print(f"  wrote {csv_path}")

        t = [r.t for r in trajectory.records]
        ax_p.plot(t, [r.p / steady.p_star for r in trajectory.records], label=name)
        ax_u.plot(t, [r.unemployment_rate for r in trajectory.records], label=name)

    ax_p.axhline(1.0, color="gray", lw=0.8, ls="--")
    ax_p.set_xlabel("period")
    ax_p.set_ylabel("price / benchmark price")
    ax_p.set_title("Price adjustment")
    ax_u.set_xlabel("period")
    ax_u.set_ylabel("unemployment rate")
    ax_u.set_title("Involuntary unemployment")
    for ax in (ax_p, ax_u):
        ax.legend()
    fig.tight_layout()
    fig_path = OUT / "unemployment_dynamics.png"
    fig.savefig(fig_path, dpi=150)
    print(f"  wrote {fig_path}")


if __name__ == "__main__":
    main()
