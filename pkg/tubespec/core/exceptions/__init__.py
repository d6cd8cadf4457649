# Custom exceptions

# Domain exceptions
from .domain_exceptions import (
    BadConfig,
    BadFamily,
    BoundTooLarge,
    ConfigurationError,
    DegenerateLattice,
    DomainException,
    NonPositiveRadius,
    NotCoprime,
    NotNormalized,
    NotQuasiIsometric,
    TubeTooShort,
    ValidationError,
    WindowNotCovered,
    ZeroFunction,
    ZeroMode,
)

# Numerical exceptions
from .numerical_exceptions import (
    GridTooCoarse,
    IterationFailure,
    NoConvergence,
    NumericalError,
)

__all__ = [
    # Domain exceptions
    "DomainException",
    "ValidationError",
    "ConfigurationError",
    "BadConfig",
    "DegenerateLattice",
    "BoundTooLarge",
    "NotCoprime",
    "NonPositiveRadius",
    "ZeroMode",
    "ZeroFunction",
    "WindowNotCovered",
    "NotNormalized",
    "TubeTooShort",
    "BadFamily",
    "NotQuasiIsometric",
    # Numerical exceptions
    "NumericalError",
    "NoConvergence",
    "IterationFailure",
    "GridTooCoarse",
]
