"""Exception hierarchy.

Two broad families map onto the CLI exit codes: ValidationError (bad inputs,
exit 2) and NumericalError (a computation that cannot be completed reliably,
exit 3).
"""


class GraphDSPError(Exception):
    """Base class for all library errors."""


class ValidationError(GraphDSPError, ValueError):
    """Malformed or inconsistent input (wrong shapes, bad indices, parse errors)."""


class NumericalError(GraphDSPError, ArithmeticError):
    """A numerical procedure failed or would produce unreliable results."""


class DecompositionError(NumericalError):
    """Jordan decomposition could not be certified.

    Carries a ``diagnostics`` dict (worst residuals, cluster info) to help
    decide between retrying with the exact backend or loosening tolerances.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class NotInvertibleError(NumericalError):
    """Filter has a root at an eigenvalue of the shift; names the eigenvalue."""

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class InterpolationError(NumericalError):
    """Hermite/Vandermonde system too ill-conditioned or residual too large."""


class TapsRecoveryError(NumericalError):
    """Impulse response does not determine the taps (rank-deficient system)."""
