"""Exception hierarchy shared by every module."""


class EtaRiccatiError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EtaRiccatiError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConvergenceError(EtaRiccatiError, ArithmeticError):
    """A series or quadrature did not reach the requested accuracy."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class PrecisionError(EtaRiccatiError, ArithmeticError):
    """Cancellation in a finite-difference coefficient exceeds the tolerance."""


class NoCrossingError(EtaRiccatiError, ArithmeticError):
    """The curvature function keeps a constant sign over the search window."""


class InfeasibleTargetError(EtaRiccatiError, ValueError):
    """A requested playback length needs a tempo outside the allowed range."""


class UnsupportedOrderError(EtaRiccatiError, ValueError):
    """The requested derivative order is not implemented on this path."""


class SingularDenominatorError(EtaRiccatiError, ArithmeticError):
    """A quotient's denominator cannot be told apart from zero."""
