"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input matrix or vector failed a structural check.

    ``violation`` carries the magnitude of the worst offending quantity
    (e.g. the largest Hermiticity defect) so callers can report how far
    the input was from acceptable.
    """

    def __init__(self, message: str, violation: float | None = None):
        super().__init__(message)
        self.violation = violation


class NotHermitianError(ValidationError):
    """Matrix differs from its conjugate transpose beyond tolerance."""


class NotUnitTraceError(ValidationError):
    """Trace (or squared norm) differs from 1 beyond tolerance."""


class NotPSDError(ValidationError):
    """Matrix has an eigenvalue below minus the tolerance."""


class UnsupportedDimensionError(ValueError):
    """The operation is only implemented for a restricted local dimension."""


class SizeGuardError(ValueError):
    """A dense-path operation would exceed the configured size guard."""


class EigenConvergenceError(RuntimeError):
    """An eigensolver failed to converge."""
