"""Exact rational tools for hyperbolic polynomials and their SOS certificates."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceededError,
    CertificateError,
    ContractError,
    DimensionError,
    HypercertError,
    NotHyperbolicError,
    PrecisionError,
    UnsupportedError,
)
from .poly import MvPoly, UvPoly  # noqa: E402
from .linalg import QMatrix  # noqa: E402
from .hyperbolic import HyperbolicContext, PolyMatrix  # noqa: E402
from .graphs import Graph  # noqa: E402

__all__ = [
    "__version__",
    "BudgetExceededError",
    "CertificateError",
    "ContractError",
    "DimensionError",
    "Graph",
    "HypercertError",
    "HyperbolicContext",
    "MvPoly",
    "NotHyperbolicError",
    "PolyMatrix",
    "PrecisionError",
    "QMatrix",
    "UnsupportedError",
    "UvPoly",
]
