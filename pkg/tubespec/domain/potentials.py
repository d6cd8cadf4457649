"""Radial potentials of the half-line problems.

After the unitary map f -> (sinh r cosh r)^{1/2} f the Laplacian on the
lambda-mode becomes -d^2/dr^2 + V_lambda with

    V_lambda(r) = 2 - coth(2r)^2 + (2 pi)^2 (lambda_1^2 / sinh^2 r + lambda_2^2 / cosh^2 r).

Every potential also exposes its gauge form: a weight w = phi^2 and a
reduced potential q with  -u'' + V u = mu u  equivalent to
-(w f')' + w q f = mu w f  for u = phi f. Solvers discretize the gauge form.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from math import pi
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.optimize import brentq

from ..core.exceptions import NonPositiveRadius, ZeroMode
from ..utils.extrapolation import neville_at_zero
from .lattice import ModeLevel, cross_section_eigenvalue
from .value_objects import DualMode

TWO_PI = 2.0 * pi
SERIES_CUTOFF = 1e-4
THRESHOLD_RTOL = 1e-12
C2_SAMPLE_RADII = (1e-3, 1e-4, 1e-5)


class EndpointKind(str, Enum):
    LIMIT_POINT = "LimitPoint"
    LIMIT_CIRCLE = "LimitCircle"


@dataclass(frozen=True)
class EndpointClass:
    """Weyl classification at r = 0 with c2 = lim r^2 V(r)."""

    kind: EndpointKind
    c2: float


def _radii(r) -> np.ndarray:
    values = np.asarray(r, dtype=float)
    if np.any(~(values > 0)):
        raise NonPositiveRadius(r)
    return values


def _unwrap(result: np.ndarray, r):
    return float(result) if np.ndim(r) == 0 else result


def v0(r):
    """2 - coth(2r)^2, with the small-r expansion below 1e-4."""
    x = _radii(r)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        direct = 2.0 - 1.0 / np.tanh(2.0 * x) ** 2
        series = -0.25 / x**2 + 4.0 / 3.0 - (4.0 / 15.0) * x**2
    return _unwrap(np.where(x < SERIES_CUTOFF, series, direct), r)


def _cross_section(lam: tuple[float, float], x: np.ndarray) -> np.ndarray:
    lam1, lam2 = lam
    return TWO_PI**2 * (lam1**2 / np.sinh(x) ** 2 + lam2**2 / np.cosh(x) ** 2)


def potential_value(mode: DualMode, r):
    """V_lambda(r) for scalar or array r > 0."""
    x = _radii(r)
    return _unwrap(np.asarray(v0(x)) + _cross_section(mode.lam, x), r)


def frobenius_exponent(mode: DualMode) -> float:
    """nu = 2 pi |lambda_1|; mode eigenfunctions behave like r^nu in the tube variable."""
    nu = TWO_PI * abs(mode.lam[0])
    return 0.0 if nu < 1e-14 else nu


def classify_endpoint(mode: DualMode) -> EndpointClass:
    """Limit point iff (2 pi lambda_1)^2 - 1/4 >= 3/4, i.e. |lambda_1| >= 1/(2 pi)."""
    nu = TWO_PI * abs(mode.lam[0])
    c2 = nu**2 - 0.25
    kind = EndpointKind.LIMIT_POINT if nu >= 1.0 - THRESHOLD_RTOL else EndpointKind.LIMIT_CIRCLE
    return EndpointClass(kind, c2)


def estimate_c2(mode: DualMode, radii: Iterable[float] = C2_SAMPLE_RADII) -> float:
    """Numerical lim r^2 V_lambda(r), extrapolated in r^2 to zero."""
    r = np.asarray(tuple(radii), dtype=float)
    samples = r**2 * np.asarray(potential_value(mode, r))
    return neville_at_zero(r**2, samples)


def zero_of_V0() -> float:
    """Unique positive zero of V_0, equal to log(1 + sqrt 2) / 2."""
    return brentq(lambda r: v0(r), 0.1, 1.0, xtol=1e-16, rtol=4.0 * np.finfo(float).eps)


def mode_gap(mode: DualMode, radius: float) -> float:
    """inf over (0, R] of V_lambda - V_0, attained at r = R."""
    if mode.is_zero:
        raise ZeroMode()
    return cross_section_eigenvalue(mode, radius)


def count_limit_circle(levels: Iterable[ModeLevel]) -> int:
    return sum(
        1 for level in levels if classify_endpoint(level.mode).kind is EndpointKind.LIMIT_CIRCLE
    )


class RadialPotential(ABC):
    """Potential of a half-line problem together with its gauge form."""

    @abstractmethod
    def value(self, r):
        """V(r) of -u'' + V u."""

    @abstractmethod
    def weight(self, r):
        """w(r) = phi(r)^2, used for stiffness and mass."""

    @abstractmethod
    def reduced(self, r):
        """q(r) in -(w f')' + w q f."""

    @abstractmethod
    def gauge(self, r):
        """phi(r) with u = phi f."""

    @abstractmethod
    def gauge_log_derivative(self, r):
        """phi'(r) / phi(r)."""

    @property
    @abstractmethod
    def profile_exponent(self) -> float:
        """Exponent nu of the regular solution f ~ r^nu at r = 0."""

    @property
    def weight_vanishes_at_origin(self) -> bool:
        return False

    @property
    def is_singular(self) -> bool:
        """True when truncation at epsilon is needed to realize the Friedrichs condition."""
        return False

    def weight_over_r(self, r):
        return np.asarray(self.weight(r)) / np.asarray(r)

    def reduced_times_r2(self, r):
        x = np.asarray(r, dtype=float)
        return np.asarray(self.reduced(x)) * x**2


@dataclass(frozen=True)
class ModePotential(RadialPotential):
    """The mode potential V_lambda on (0, R]."""

    mode: DualMode
    radius: Optional[float] = None

    def value(self, r):
        return potential_value(self.mode, r)

    def weight(self, r):
        x = np.asarray(r, dtype=float)
        return np.sinh(x) * np.cosh(x)

    def reduced(self, r):
        x = np.asarray(r, dtype=float)
        return _cross_section(self.mode.lam, x)

    def gauge(self, r):
        return np.sqrt(self.weight(r))

    def gauge_log_derivative(self, r):
        x = np.asarray(r, dtype=float)
        return 1.0 / np.tanh(2.0 * x)

    @property
    def profile_exponent(self) -> float:
        return frobenius_exponent(self.mode)

    @property
    def weight_vanishes_at_origin(self) -> bool:
        return True

    @property
    def is_singular(self) -> bool:
        return True

    def weight_over_r(self, r):
        x = np.asarray(r, dtype=float)
        safe = np.where(x == 0.0, 1.0, x)
        return np.where(x == 0.0, 1.0, np.sinh(2.0 * safe) / (2.0 * safe))

    def reduced_times_r2(self, r):
        x = np.asarray(r, dtype=float)
        safe = np.where(x == 0.0, 1.0, x)
        r_over_sinh = np.where(x == 0.0, 1.0, safe / np.sinh(safe))
        lam1, lam2 = self.mode.lam
        return TWO_PI**2 * (lam1**2 * r_over_sinh**2 + lam2**2 * (x / np.cosh(x)) ** 2)

    def endpoint(self) -> EndpointClass:
        return classify_endpoint(self.mode)


@dataclass(frozen=True)
class RegularPotential(RadialPotential):
    """A bounded potential V on (0, R] with Dirichlet behaviour at r = 0.

    Used for model operators such as -d^2/dr^2 + c.
    """

    function: Callable[[np.ndarray], np.ndarray]
    name: str = "regular"

    def value(self, r):
        x = np.asarray(r, dtype=float)
        return np.broadcast_to(np.asarray(self.function(x), dtype=float), x.shape)

    def weight(self, r):
        return np.ones_like(np.asarray(r, dtype=float))

    def reduced(self, r):
        return self.value(r)

    def gauge(self, r):
        return np.ones_like(np.asarray(r, dtype=float))

    def gauge_log_derivative(self, r):
        return np.zeros_like(np.asarray(r, dtype=float))

    @property
    def profile_exponent(self) -> float:
        return 1.0


class ConstantPotential(RegularPotential):
    """V(r) = c; c = 0 is the free operator -d^2/dr^2."""

    def __init__(self, constant: float = 0.0):
        c = float(constant)
        super().__init__(function=lambda x: np.full_like(x, c, dtype=float), name="constant")
        object.__setattr__(self, "constant", c)

