"""Exception types shared across the package."""


class HypercertError(Exception):
    """Base class for all library errors."""


class DimensionError(HypercertError, ValueError):
    """Operands or vectors have incompatible sizes."""


class ContractError(HypercertError, ValueError):
    """A documented precondition was violated by the caller."""


class NotHyperbolicError(HypercertError):
    """A line restriction has non-real roots.

    ``witness`` is the point whose line exposed the failure.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PrecisionError(HypercertError):
    """Numeric refinement could not resolve a quantity within the retry budget."""


class BudgetExceededError(HypercertError):
    """An exact enumeration would exceed its size budget."""


class UnsupportedError(HypercertError):
    """The input lies outside the supported special cases."""


class CertificateError(HypercertError):
    """A certificate file or shipped certificate is internally inconsistent."""
