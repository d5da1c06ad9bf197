"""Exception types shared across the package."""


class NonConvergenceError(RuntimeError):
    """An iterative computation hit its cap before meeting its tolerance.

    Carries the last observed residual (or increment) when one is available,
    so callers can report how far the computation got.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class PivotError(ArithmeticError):
    """Tridiagonal elimination met a pivot too small to divide by safely."""


class EventCapError(RuntimeError):
    """A simulated path exceeded its event budget; the run is aborted rather
    than truncated, because truncation would bias the estimates."""
