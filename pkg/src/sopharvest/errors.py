"""Exception hierarchy.

``ValueError`` subclasses flag bad input; ``NumericalError`` subclasses flag a
computation that cannot be trusted. The command line maps the two families to
different exit codes.
"""


class NumericalError(ArithmeticError):
    """Base class for failures of a numerical computation."""


class DimensionMismatch(ValueError):
    pass


class NotCanonical(ValueError):
    """Coefficient vectors do not define a canonical pair, ``[q, p] != i``."""

    def __init__(self, residual, message=None):
        self.residual = float(residual)
        super().__init__(message or f"canonical constraint violated, residual {self.residual:.3g}")


class NonPositiveDefinite(NumericalError):
    """Covariance matrix violates the uncertainty relation."""


class NonPhysicalEigenvalue(NumericalError):
    """Symplectic eigenvalue below 1/2."""


class UncertaintyViolation(NumericalError):
    """Mode moments give ``4 <q^2><p^2> < 1`` beyond tolerance."""


class NoPartner(ValueError):
    """The mode is already pure (``g == 0``), so it has no partner."""


class DegenerateMode(NumericalError):
    pass


class IllConditioned(NumericalError):
    """Laurent fit does not reproduce the sampled function."""


class ParseError(ValueError):
    """Malformed mode-spec file."""
