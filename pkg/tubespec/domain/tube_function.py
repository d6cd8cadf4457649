"""Separable functions on the tube.

f(r, theta, z) = F(r) Psi_lambda(theta, z) with Psi_lambda normalized on the
base torus. All norms reduce to weighted radial integrals with the volume
weight w(r) = sinh r cosh r:

    ||f||^2 = int w F^2,   ||df||^2 = int w (F'^2 + q_lambda F^2).
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from ..core.exceptions import ValidationError, ZeroFunction
from .potentials import ModePotential
from .spectra import EigenList
from .value_objects import DualMode

GAUSS_ORDER = 4


@dataclass(frozen=True)
class TubeFunction:
    """Radial profile F sampled on increasing nodes, times a cross-section mode.

    Below nodes[0] the profile continues as F(a) (r/a)^nu when
    ``inner_exponent`` is set and vanishes otherwise.
    """

    mode: DualMode
    nodes: np.ndarray
    values: np.ndarray
    inner_exponent: Optional[float] = None
    _spline: CubicSpline = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape or nodes.size < 4:
            raise ValidationError(
                "Tube function needs at least 4 aligned samples", field="values", value=values.shape
            )
        if nodes[0] < 0 or np.any(np.diff(nodes) <= 0):
            raise ValidationError("Nodes must be increasing and non-negative", field="nodes")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_spline", CubicSpline(nodes, values))

    @classmethod
    def from_eigenpair(cls, mode: DualMode, eigen_list: EigenList, i: int) -> "TubeFunction":
        inner = eigen_list.mesh_descriptor.inner
        exponent = eigen_list.inner_exponent if inner == "profile" else None
        return cls(mode, eigen_list.nodes, eigen_list.profiles[i], exponent)

    @classmethod
    def constant(cls, mode: DualMode, radius: float, value: float = 1.0, samples: int = 65) -> "TubeFunction":
        nodes = np.linspace(0.0, radius, samples)
        return cls(mode, nodes, np.full(samples, float(value)), inner_exponent=None)

    @property
    def radius(self) -> float:
        return float(self.nodes[-1])

    @property
    def potential(self) -> ModePotential:
        return ModePotential(self.mode)

    def scaled(self, factor: float) -> "TubeFunction":
        return TubeFunction(self.mode, self.nodes, factor * self.values, self.inner_exponent)

    def multiplied(self, cutoff) -> "TubeFunction":
        """Pointwise product with a radial function sampled at the nodes."""
        return TubeFunction(self.mode, self.nodes, self.values * np.asarray(cutoff(self.nodes)), None)

    def value(self, r):
        return self._spline(r)

    def derivative(self, r):
        return self._spline(r, 1)

    def _weights(self, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        potential = self.potential
        return np.asarray(potential.weight(r)), np.asarray(potential.reduced(r))

    def density(self, r) -> np.ndarray:
        """H^1 density on the torus T^2_r: w (F^2 + F'^2 + q F^2)."""
        r = np.asarray(r, dtype=float)
        w, q = self._weights(r)
        F = self.value(r)
        dF = self.derivative(r)
        return w * (F**2 + dF**2 + q * F**2)

    def boundary_flux(self, r: float) -> float:
        """int over T^2_r of f d_r f, i.e. w F F'."""
        w, _ = self._weights(np.asarray(r, dtype=float))
        return float(w * self.value(r) * self.derivative(r))

    def _inner_integrals(self, hi: float) -> tuple[float, float]:
        """(mass, energy) of the profile continuation over [0, min(hi, a)]."""
        a = float(self.nodes[0])
        if self.inner_exponent is None or a == 0.0 or self.values[0] == 0.0:
            return 0.0, 0.0
        nu = self.inner_exponent
        top = min(hi, a)
        Fa = float(self.values[0])
        potential = self.potential

        def mass_density(r: float) -> float:
            return float(potential.weight(r)) * (Fa * (r / a) ** nu) ** 2

        def energy_density(r: float) -> float:
            w = float(potential.weight(r))
            F = Fa * (r / a) ** nu
            dF = Fa * nu * r ** (nu - 1.0) / a**nu if nu > 0 else 0.0
            return w * dF**2 + float(potential.reduced_times_r2(r)) * w / r**2 * F**2

        mass, _ = quad(mass_density, 0.0, top, limit=200)
        energy, _ = quad(energy_density, 0.0, top, limit=200)
        return mass, energy

    def integrals(self, lo: float = 0.0, hi: Optional[float] = None) -> tuple[float, float]:
        """(||f||^2, ||df||^2) over the slab T^2_(lo, hi]."""
        hi = self.radius if hi is None else min(hi, self.radius)
        lo = max(lo, 0.0)
        if hi <= lo:
            return 0.0, 0.0
        mass = energy = 0.0
        if lo == 0.0:
            mass, energy = self._inner_integrals(hi)
        start = max(lo, float(self.nodes[0]))
        if hi <= start:
            return mass, energy
        inside = self.nodes[(self.nodes > start) & (self.nodes < hi)]
        edges = np.concatenate([[start], inside, [hi]])
        x, gw = leggauss(GAUSS_ORDER)
        h = np.diff(edges)
        points = edges[:-1, None] + 0.5 * h[:, None] * (x[None, :] + 1.0)
        weights = 0.5 * h[:, None] * gw[None, :]
        w, q = self._weights(points)
        F = self.value(points)
        dF = self.derivative(points)
        mass += float(np.sum(weights * w * F**2))
        energy += float(np.sum(weights * w * (dF**2 + q * F**2)))
        return mass, energy

    def norm_squared(self) -> float:
        return self.integrals()[0]

    def h1_mass(self, lo: float = 0.0, hi: Optional[float] = None) -> float:
        mass, energy = self.integrals(lo, hi)
        return mass + energy

    def rayleigh(self) -> float:
        mass, energy = self.integrals()
        if mass == 0.0:
            raise ZeroFunction()
        return energy / mass

    def is_compactly_supported(self, rtol: float = 1e-12) -> bool:
        scale = float(np.max(np.abs(self.values)))
        if scale == 0.0:
            return False
        return abs(self.values[0]) <= rtol * scale and abs(self.values[-1]) <= rtol * scale
