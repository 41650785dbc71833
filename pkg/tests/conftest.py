import pytest

from olgsim import EconomyParams

# Reference economy: net savings fall short of debt, so the benchmark is
# unstable (criterion -10).  gamma_adj = 0.1 keeps the slope denominator
# positive (it needs gamma_adj < 0.4 here).
REFERENCE_VALUES = dict(
    sigma=2.0, theta=0.5, eta=1.0, gamma0=1.0, y=1.0,
    L_f=100.0, g=5.0, d=0.1, q=0.05, gamma_adj=0.1, W=1.0,
)

# Stable variant: small pension and debt, slow adjustment.
STABLE_VALUES = dict(REFERENCE_VALUES, d=0.01, q=0.01, gamma_adj=0.01)


@pytest.fixture
def reference_params() -> EconomyParams:
    return EconomyParams.from_values(**REFERENCE_VALUES)


@pytest.fixture
def stable_params() -> EconomyParams:
    return EconomyParams.from_values(**STABLE_VALUES)
