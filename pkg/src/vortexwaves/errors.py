"""Exception and warning types shared across the package."""


class VortexWavesError(Exception):
    """Base class for all package errors."""


class SingularPointError(VortexWavesError, ValueError):
    """Evaluation requested at (or numerically indistinguishable from) a singularity."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DomainError(VortexWavesError, ValueError):
    """Input lies outside the region where a formula is defined."""


class SingularMatrixError(VortexWavesError, ArithmeticError):
    """The vortex interaction matrix is singular to working tolerance."""


class QuadratureError(VortexWavesError, ArithmeticError):
    """Adaptive quadrature failed to reach its error target."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class BracketError(VortexWavesError, ArithmeticError):
    """A root-finder could not bracket a sign change."""

    def __init__(self, message, samples=None):
        super().__init__(message)
        self.samples = samples


class StepSizeError(VortexWavesError, ValueError):
    """Integrator step is too large for the local speed."""


class ElementaryRangeError(VortexWavesError, OverflowError):
    """Closed-form elementary profile evaluated beyond its safe range."""


class DecayError(VortexWavesError, ValueError):
    """Sampled data does not decay enough for a truncated transform."""


class ConditioningWarning(UserWarning):
    """Result is computed but may have lost several digits."""
