"""Exception types shared across the package."""


class CalibrationError(ValueError):
    """Parameters are incompatible with a full-employment benchmark.

    Raised when full-employment output cannot cover government purchases
    plus aggregate childhood consumption, so the benchmark savings stock
    would be non-positive.
    """


class NumericalError(ArithmeticError):
    """A numerical procedure failed (bracketing, per-period solve, ...)."""


class StepSingularError(NumericalError):
    """The perfect-foresight per-period solve is singular.

    The linear solve for the next price requires 1 - gamma_adj * B > 0,
    where B is the pension-expectation coefficient of labor demand.  A
    violation means the price-adjustment speed is too fast relative to the
    pension indexation feedback for a forward-looking solution to exist.
    """


class BracketError(NumericalError):
    """A root bracket could not be established."""
