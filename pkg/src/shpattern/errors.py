"""Exception hierarchy shared by the solvers and the harness."""


class ShPatternError(Exception):
    """Base class for all errors raised by this package."""


class SingularOperator(ShPatternError):
    """An implicit operator has a (numerically) vanishing Fourier symbol."""


class GridMismatch(ShPatternError):
    """Two fields or a field and a grid do not describe the same geometry."""


class BlowUp(ShPatternError):
    """A solver state left the finite/bounded regime.

    Attributes
    ----------
    step : int
        Index of the step that produced the offending state.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class RealityViolation(ShPatternError):
    """A field expected to be real carries a non-negligible imaginary part."""


class ClockMismatch(ShPatternError):
    """Requested times are not integer multiples of the solver time steps."""


class ConfigError(ShPatternError):
    """Malformed or inconsistent run configuration."""
