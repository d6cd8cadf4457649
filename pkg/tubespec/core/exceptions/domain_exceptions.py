"""Domain-specific exceptions for the application.

This module defines the exception hierarchy shared by all layers. Every
error carries an error code, a context dictionary and an id so the CLI
can print a one-line diagnostic and the logs can hold the details.
"""

import uuid
from datetime import datetime, timezone
from typing import Any, Optional


class DomainException(Exception):
    """Base exception for all domain-related errors.

    This is the root exception class that all domain exceptions inherit from.
    It provides common functionality like error codes, context, and metadata.
    """

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        context: Optional[dict[str, Any]] = None,
        original_error: Optional[Exception] = None,
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.context = context or {}
        self.original_error = original_error
        self.timestamp = datetime.now(timezone.utc)
        self.error_id = str(uuid.uuid4())

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to dictionary for serialization."""
        return {
            "error": True,
            "message": self.message,
            "error_code": self.error_code,
            "error_id": self.error_id,
            "timestamp": self.timestamp.isoformat(),
            "context": self.context,
        }


class ValidationError(DomainException):
    """Exception raised when input data fails validation.

    Raised when a request violates a precondition: bad parameters,
    malformed lattice input, out-of-range thresholds.
    """

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        value: Optional[Any] = None,
        validation_rule: Optional[str] = None,
        **kwargs: Any,
    ):
        context = kwargs.pop("context", None) or {}
        if field:
            context["field"] = field
        if value is not None:
            context["value"] = str(value)
        if validation_rule:
            context["validation_rule"] = validation_rule

        super().__init__(message, context=context, **kwargs)
        self.field = field
        self.value = value
        self.validation_rule = validation_rule


class ConfigurationError(DomainException):
    """Exception raised when the application configuration is invalid."""

    def __init__(self, config_key: str, message: Optional[str] = None, **kwargs: Any):
        if not message:
            message = f"Invalid configuration for '{config_key}'"
        context = kwargs.pop("context", None) or {}
        context["config_key"] = config_key
        super().__init__(message, context=context, **kwargs)
        self.config_key = config_key


class BadConfig(ValidationError):
    """Solver, grid or window parameters that cannot be honoured."""


# Lattice errors


class DegenerateLattice(ValidationError):
    """The two basis vectors do not span a lattice."""

    def __init__(self, determinant: float, message: Optional[str] = None, **kwargs: Any):
        super().__init__(
            message or f"Basis vectors are linearly dependent (det={determinant:.3e})",
            field="basis",
            value=determinant,
            validation_rule="non_degenerate",
            **kwargs,
        )
        self.determinant = determinant


class BoundTooLarge(ValidationError):
    """Mode enumeration would exceed the configured cap."""

    def __init__(self, estimate: int, cap: int, **kwargs: Any):
        super().__init__(
            f"Energy bound selects about {estimate} modes, above the cap of {cap}",
            field="energy_bound",
            value=estimate,
            validation_rule="mode_cap",
            **kwargs,
        )
        self.estimate = estimate
        self.cap = cap


class NotCoprime(ValidationError):
    """Dehn coefficients requested for a non-primitive (p, q)."""

    def __init__(self, p: int, q: int, **kwargs: Any):
        super().__init__(
            f"Surgery coefficients ({p}, {q}) are not coprime",
            field="pq",
            value=(p, q),
            validation_rule="gcd == 1",
            **kwargs,
        )


# Potential and function errors


class NonPositiveRadius(ValidationError):
    """A radial evaluation point is not strictly positive."""

    def __init__(self, radius: Any, **kwargs: Any):
        super().__init__(
            "Radial coordinate must be strictly positive",
            field="r",
            value=radius,
            validation_rule="r > 0",
            **kwargs,
        )


class ZeroMode(ValidationError):
    """An operation that needs a nonzero dual vector received the zero mode."""

    def __init__(self, **kwargs: Any):
        super().__init__(
            "Operation is undefined for the zero mode",
            field="mode",
            validation_rule="mode != 0",
            **kwargs,
        )


class ZeroFunction(ValidationError):
    """A Rayleigh quotient was requested for the zero function."""

    def __init__(self, **kwargs: Any):
        super().__init__(
            "Function vanishes identically",
            field="samples",
            validation_rule="nonzero",
            **kwargs,
        )


class WindowNotCovered(ValidationError):
    """A counting window reaches outside the assembled spectral window."""

    def __init__(self, requested: tuple[float, float], assembled: tuple[float, float], **kwargs: Any):
        super().__init__(
            f"Window {list(requested)} is not inside the assembled window {list(assembled)}",
            field="window",
            value=requested,
            validation_rule="subset_of_assembled",
            **kwargs,
        )


class NotNormalized(ValidationError):
    """A tube function expected to have unit L2 norm does not."""

    def __init__(self, norm_squared: float, **kwargs: Any):
        super().__init__(
            f"Function has squared norm {norm_squared:.6g}, expected 1",
            field="f",
            value=norm_squared,
            validation_rule="norm == 1",
            **kwargs,
        )


class TubeTooShort(ValidationError):
    """The tube does not contain the slab range requested."""

    def __init__(self, radius: float, required: float, **kwargs: Any):
        super().__init__(
            f"Tube radius {radius:.6g} is shorter than the required {required:.6g}",
            field="radius",
            value=radius,
            validation_rule="R >= rho + c",
            **kwargs,
        )


class BadFamily(ValidationError):
    """A deformation family violates its construction rules."""


class NotQuasiIsometric(ValidationError):
    """Two discretized metrics are not within the requested quasi-isometry."""

    def __init__(self, worst_ratio: float, beta: float, **kwargs: Any):
        super().__init__(
            f"Metric ratio {worst_ratio:.6g} exceeds the bound 1+beta={1 + beta:.6g}",
            field="beta",
            value=beta,
            validation_rule="pointwise quasi-isometry",
            **kwargs,
        )
        self.worst_ratio = worst_ratio
