"""Exception hierarchy shared by all modules."""


class MorsentError(Exception):
    """Base class for every error raised by morsent."""


class DomainError(MorsentError, ValueError):
    """Argument outside the domain of a special function."""


class InvalidStateError(MorsentError, IndexError):
    """Requested quantum number does not label a bound state."""


class NumericalError(MorsentError):
    """Base class for failures of the numerical machinery."""


class NonConvergence(NumericalError):
    """Adaptive integration exhausted its subdivision budget.

    The best available result is kept on ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NonFinite(NumericalError):
    """The integrand returned NaN or infinity at a quadrature node."""


class SupportNotFound(NumericalError):
    """Outward search for the support edge did not terminate."""
