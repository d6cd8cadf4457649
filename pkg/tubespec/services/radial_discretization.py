"""Radial meshes and the tridiagonal pencil of a half-line problem.

A potential is discretized in its gauge form

    a(f, f) = int w (f'^2 + q f^2) dr + sigma f(R)^2,   m(f, f) = int w f^2 dr

with P1 elements, lumped mass and lumped potential. The innermost element
[0, a] carries the profile (r / a)^nu of the regular solution, so the
discrete space sits inside the Friedrichs form domain. Cell integrals use
Gauss-Legendre quadrature; the profile element uses QUADPACK with the
algebraic endpoint weight.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.linalg import LinAlgError, eigh_tridiagonal

from ..core.exceptions import BadConfig, IterationFailure, ZeroFunction
from ..domain.potentials import RadialPotential
from ..domain.value_objects import BoundarySpec, RightCondition

NODE_MERGE_RTOL = 1e-12
BISECTION_TOL = 1e-14


class InnerElement(str, Enum):
    """Treatment of the innermost node."""

    PROFILE = "profile"
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class RadialMesh:
    """Strictly increasing nodes on (0, R]; nodes[0] is the inner radius."""

    nodes: np.ndarray
    inner: InnerElement
    n: int
    grading: float
    ladder_steps: int = 0

    @property
    def radius(self) -> float:
        return float(self.nodes[-1])

    @property
    def epsilon(self) -> float:
        return float(self.nodes[0])

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    def bisected(self) -> "RadialMesh":
        """Every cell split at its midpoint; the inner element is kept."""
        midpoints = 0.5 * (self.nodes[:-1] + self.nodes[1:])
        nodes = np.empty(2 * self.nodes.size - 1)
        nodes[0::2] = self.nodes
        nodes[1::2] = midpoints
        return replace(self, nodes=nodes)


def graded_nodes(radius: float, n: int, grading: float) -> np.ndarray:
    """R (i/n)^gamma for i = 0..n."""
    return radius * (np.arange(n + 1) / n) ** grading


def epsilon_ladder(eps0: float, steps: int) -> np.ndarray:
    """eps0 * 2^-j for j = 0..steps."""
    return eps0 * 0.5 ** np.arange(steps + 1)


def _merge(nodes: np.ndarray) -> np.ndarray:
    nodes = np.unique(nodes)
    keep = np.ones(nodes.size, dtype=bool)
    keep[1:] = np.diff(nodes) > NODE_MERGE_RTOL * nodes[1:]
    return nodes[keep]


def build_mesh(
    radius: float,
    n: int,
    grading: float,
    epsilon: float,
    inner: InnerElement,
    eps0: Optional[float] = None,
) -> RadialMesh:
    """Graded base nodes above epsilon, the ladder nodes eps0 * 2^-j above it, and epsilon.

    Meshes for successive ladder radii are nested.
    """
    if not 0 < epsilon < radius:
        raise BadConfig("Inner radius must lie in (0, R)", field="epsilon", value=epsilon)
    base = graded_nodes(radius, n, grading)
    parts = [base[base > epsilon * (1.0 + NODE_MERGE_RTOL)], [epsilon]]
    steps = 0
    if eps0 is not None and eps0 > epsilon:
        steps = int(np.round(np.log2(eps0 / epsilon)))
        ladder = epsilon_ladder(eps0, steps)
        parts.append(ladder[(ladder > epsilon * (1.0 + NODE_MERGE_RTOL)) & (ladder < radius)])
    nodes = _merge(np.concatenate([np.asarray(p, dtype=float) for p in parts]))
    nodes[-1] = radius
    return RadialMesh(nodes=nodes, inner=inner, n=n, grading=grading, ladder_steps=steps)


def regular_mesh(radius: float, n: int, grading: float) -> RadialMesh:
    """Mesh for a bounded potential: the first cell [0, r_1] is the profile element."""
    base = graded_nodes(radius, n, grading)
    return RadialMesh(nodes=base[1:].copy(), inner=InnerElement.PROFILE, n=n, grading=grading)


def _gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def profile_integrals(
    potential: RadialPotential, a: float, order: int = 4
) -> tuple[float, float, float]:
    """(stiffness, mass, potential) integrals of the profile (r/a)^nu over [0, a]."""
    nu = potential.profile_exponent
    if not potential.weight_vanishes_at_origin:
        t, gw = _gauss_rule(max(order, 4))
        r = a * t
        w = np.asarray(potential.weight(r))
        q = np.asarray(potential.reduced(r))
        p = t**nu
        dp = nu * t ** (nu - 1.0) / a
        return (
            float(a * np.sum(gw * w * dp**2)),
            float(a * np.sum(gw * w * p**2)),
            float(a * np.sum(gw * w * q * p**2)),
        )

    options = {"epsabs": 1e-15, "epsrel": 1e-12, "limit": 200}
    if nu == 0.0:
        mass, _ = quad(lambda t: float(potential.weight(a * t)), 0.0, 1.0, **options)
        pot, _ = quad(
            lambda t: float(potential.weight(a * t) * potential.reduced(a * t)), 0.0, 1.0, **options
        )
        return 0.0, a * mass, a * pot

    def w_over_r(t: float) -> float:
        return float(potential.weight_over_r(a * t))

    stiff, _ = quad(w_over_r, 0.0, 1.0, weight="alg", wvar=(2.0 * nu - 1.0, 0.0), **options)
    mass, _ = quad(w_over_r, 0.0, 1.0, weight="alg", wvar=(2.0 * nu + 1.0, 0.0), **options)
    pot, _ = quad(
        lambda t: w_over_r(t) * float(potential.reduced_times_r2(a * t)),
        0.0,
        1.0,
        weight="alg",
        wvar=(2.0 * nu - 1.0, 0.0),
        **options,
    )
    return nu**2 * stiff, a**2 * mass, pot


def robin_coefficient(potential: RadialPotential, radius: float, bc: BoundarySpec) -> float:
    """sigma = w(R) (phi'/phi(R) - kappa); zero for the natural condition."""
    if bc.right is RightCondition.ROBIN:
        return float(potential.weight(radius) * (potential.gauge_log_derivative(radius) - bc.kappa))
    return 0.0


def sturm_count(d: np.ndarray, e: np.ndarray, shifts) -> np.ndarray:
    """Number of eigenvalues of the tridiagonal (d, e) strictly below each shift."""
    shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
    e2 = np.asarray(e, dtype=float) ** 2
    pivmin = np.finfo(float).tiny * max(1.0, float(e2.max()) if e2.size else 1.0)
    pivot = d[0] - shifts
    count = (pivot < 0).astype(np.int64)
    for i in range(1, d.size):
        pivot = np.where(np.abs(pivot) < pivmin, -pivmin, pivot)
        pivot = d[i] - shifts - e2[i - 1] / pivot
        count += pivot < 0
    return count


@dataclass(frozen=True)
class RadialPencil:
    """Lumped tridiagonal pencil (K, M) on a radial mesh.

    ``conductance[i]`` couples nodes i and i+1; ``extra`` holds the diagonal
    terms that are not conductances (potential, profile element, Robin).
    """

    nodes: np.ndarray
    conductance: np.ndarray
    extra: np.ndarray
    mass: np.ndarray
    active: np.ndarray
    gauge: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        diag = self.extra.copy()
        diag[:-1] += self.conductance
        diag[1:] += self.conductance
        return diag

    @property
    def active_size(self) -> int:
        return int(self.active.sum())

    def tridiagonal(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Symmetric M^{-1/2} K M^{-1/2} on the active nodes, with its scaling."""
        idx = np.flatnonzero(self.active)
        scale = 1.0 / np.sqrt(self.mass[idx])
        d = self.diagonal[idx] * scale**2
        e = -self.conductance[idx[:-1]] * scale[:-1] * scale[1:]
        return d, e, scale

    def count_below(self, shifts) -> np.ndarray:
        d, e, _ = self.tridiagonal()
        return sturm_count(d, e, shifts)

    def rayleigh(self, f: np.ndarray) -> float:
        """Difference-form quotient (sum k (df)^2 + sum extra f^2) / sum M f^2."""
        f = np.where(self.active, f, 0.0)
        denominator = float(np.sum(self.mass * f**2))
        if denominator == 0.0:
            raise ZeroFunction()
        numerator = float(np.sum(self.conductance * np.diff(f) ** 2) + np.sum(self.extra * f**2))
        return numerator / denominator

    def eigenpairs(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues lo..hi (0-based, inclusive) and mass-normalized nodal vectors.

        Values are refined by the difference-form Rayleigh quotient of
        their vectors. Rows of the returned matrix are vectors on all nodes,
        zero on inactive ones.
        """
        if hi < lo:
            return np.zeros(0), np.zeros((0, self.nodes.size))
        if hi >= self.active_size:
            raise BadConfig(
                "More eigenvalues requested than the mesh supports",
                field="count",
                value=hi + 1,
            )
        d, e, scale = self.tridiagonal()
        try:
            _, vectors = eigh_tridiagonal(
                d, e, select="i", select_range=(lo, hi), tol=BISECTION_TOL
            )
        except (LinAlgError, ValueError) as err:
            raise IterationFailure("eigh_tridiagonal", original_error=err) from err
        profiles = np.zeros((vectors.shape[1], self.nodes.size))
        profiles[:, self.active] = (vectors * scale[:, None]).T
        for row in profiles:
            big = np.flatnonzero(np.abs(row) > 1e-3 * np.abs(row).max())
            if big.size and row[big[0]] < 0:
                row *= -1.0
        values = np.array([self.rayleigh(row) for row in profiles])
        return values, profiles


def assemble_pencil(
    potential: RadialPotential,
    mesh: RadialMesh,
    bc: BoundarySpec,
    quadrature_order: int = 4,
) -> RadialPencil:
    """Assemble the lumped pencil of ``potential`` on ``mesh`` with condition ``bc`` at R."""
    x = mesh.nodes
    h = np.diff(x)
    t, gw = _gauss_rule(quadrature_order)
    points = x[:-1, None] + h[:, None] * t[None, :]
    weights = h[:, None] * gw[None, :]
    w = np.asarray(potential.weight(points))
    wq = w * np.asarray(potential.reduced(points))

    conductance = np.sum(w * weights, axis=1) / h**2
    mass = np.zeros(x.size)
    extra = np.zeros(x.size)
    mass[:-1] += np.sum(w * (1.0 - t) * weights, axis=1)
    mass[1:] += np.sum(w * t * weights, axis=1)
    extra[:-1] += np.sum(wq * (1.0 - t) * weights, axis=1)
    extra[1:] += np.sum(wq * t * weights, axis=1)

    active = np.ones(x.size, dtype=bool)
    if mesh.inner is InnerElement.PROFILE:
        stiff, profile_mass, profile_pot = profile_integrals(potential, x[0], quadrature_order)
        extra[0] += stiff + profile_pot
        mass[0] += profile_mass
    else:
        active[0] = False
    if bc.right is RightCondition.DIRICHLET:
        active[-1] = False
    else:
        extra[-1] += robin_coefficient(potential, mesh.radius, bc)

    return RadialPencil(
        nodes=x,
        conductance=conductance,
        extra=extra,
        mass=mass,
        active=active,
        gauge=np.asarray(potential.gauge(x), dtype=float),
    )
