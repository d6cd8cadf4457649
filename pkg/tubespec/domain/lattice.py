"""Lattice geometry of the filling torus.

Classification into cone tubes and irrational lattices, dual modes and
their cross-section eigenvalues, basis reduction, and the radius
convention that pins a tube by the area of its boundary torus.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import asinh, cosh, exp, gcd, hypot, log, pi, sinh
from typing import Optional, Union

import numpy as np

from ..core.exceptions import BoundTooLarge, NonPositiveRadius, NotCoprime, ValidationError
from .value_objects import DualMode, LatticeBasis, TubeGeometry

TWO_PI = 2.0 * pi


@dataclass(frozen=True)
class ConeTube:
    """Lattice generated by (alpha, 0) and (twist, length), 0 <= twist < alpha."""

    alpha: float
    twist: float
    length: float

    def __post_init__(self):
        if self.alpha <= 0 or self.length <= 0:
            raise ValidationError(
                "Cone angle and core length must be positive",
                field="cone",
                value=(self.alpha, self.twist, self.length),
            )

    def basis(self) -> LatticeBasis:
        return LatticeBasis.from_cone(self.alpha, self.twist, self.length)

    def is_smooth_filling(self, tol: float = 1e-12) -> bool:
        return abs(self.alpha - TWO_PI) <= tol * TWO_PI


@dataclass(frozen=True)
class IrrationalTube:
    """No lattice vector with coefficients up to ``coefficient_bound`` lies on z = 0."""

    coefficient_bound: int


TubeShapeClass = Union[ConeTube, IrrationalTube]


@dataclass(frozen=True)
class ModeLevel:
    """A dual mode with its cross-section eigenvalue at a fixed radius."""

    mode: DualMode
    value: float


@dataclass(frozen=True)
class TubeConstants:
    """e^{2R} covol with the two-sided bounds implied by the boundary area."""

    e2r_covolume: float
    lower: float
    upper: float

    @property
    def ratio(self) -> float:
        return self.upper / self.lower


def covolume(basis: LatticeBasis) -> float:
    return basis.covolume()


def dual_basis(basis: LatticeBasis) -> tuple[tuple[float, float], tuple[float, float]]:
    return basis.dual_basis()


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _horizontal_candidate(
    basis: LatticeBasis, coefficient_bound: int
) -> tuple[int, int]:
    """Best primitive (m, n) making m*z1 + n*z2 vanish, by rational reconstruction."""
    z1, z2 = basis.v1[1], basis.v2[1]
    if z1 == 0.0:
        return 1, 0
    if z2 == 0.0:
        return 0, 1
    # m*z1 + n*z2 = 0  <=>  n/m = -z1/z2; divide by the larger component
    if abs(z2) >= abs(z1):
        ratio = Fraction(-z1 / z2).limit_denominator(coefficient_bound)
        return ratio.denominator, ratio.numerator
    ratio = Fraction(-z2 / z1).limit_denominator(coefficient_bound)
    return ratio.numerator, ratio.denominator


def classify(
    basis: LatticeBasis, tol: float = 1e-12, coefficient_bound: int = 10_000
) -> TubeShapeClass:
    """Decide whether the lattice contains a nonzero vector with zero z-component.

    The candidate (m, n) with |m|, |n| <= coefficient_bound is accepted when
    |m z1 + n z2| <= tol * |m v1 + n v2|. Cone tubes come back in normal form.
    """
    if tol < 0:
        raise ValidationError("Tolerance must be non-negative", field="tol", value=tol)
    m, n = _horizontal_candidate(basis, coefficient_bound)
    if max(abs(m), abs(n)) > coefficient_bound:
        return IrrationalTube(coefficient_bound)

    theta = m * basis.v1[0] + n * basis.v2[0]
    z = m * basis.v1[1] + n * basis.v2[1]
    if abs(z) > tol * hypot(theta, z):
        return IrrationalTube(coefficient_bound)

    if theta < 0:
        m, n, theta = -m, -n, -theta
    alpha = theta
    # complete (m, n) to a unimodular pair: m*b - n*a = 1
    _, x, y = _extended_gcd(m, n)
    a, b = -y, x
    second_theta = a * basis.v1[0] + b * basis.v2[0]
    second_z = a * basis.v1[1] + b * basis.v2[1]
    if second_z < 0:
        second_theta = -second_theta
    length = basis.covolume() / alpha
    twist = second_theta % alpha
    if twist >= alpha or np.isclose(twist, alpha, rtol=1e-15, atol=0.0):
        twist = 0.0
    return ConeTube(alpha=alpha, twist=twist, length=length)


def cross_section_eigenvalue(mode: DualMode, r: float) -> float:
    """(2 pi)^2 (lambda_1^2 / sinh^2 r + lambda_2^2 / cosh^2 r)."""
    if r <= 0:
        raise NonPositiveRadius(r)
    lam1, lam2 = mode.lam
    return TWO_PI**2 * (lam1**2 / sinh(r) ** 2 + lam2**2 / cosh(r) ** 2)


def _mode_form(basis: LatticeBasis, radius: float) -> np.ndarray:
    """Gram matrix G with cross-section eigenvalue = [m n] G [m n]^T."""
    w1, w2 = basis.dual_basis()
    W = np.array([[w1[0], w2[0]], [w1[1], w2[1]]])
    D_inv = np.diag([1.0 / sinh(radius) ** 2, 1.0 / cosh(radius) ** 2])
    return TWO_PI**2 * W.T @ D_inv @ W


def enumerate_modes(
    basis: LatticeBasis,
    radius: float,
    energy_bound: float,
    mode_cap: int = 1_000_000,
) -> list[ModeLevel]:
    """All dual modes whose cross-section eigenvalue at ``radius`` is <= energy_bound.

    The result is sorted by (value, m, n); the zero mode comes first.
    """
    if radius <= 0:
        raise NonPositiveRadius(radius)
    if energy_bound < 0:
        raise ValidationError(
            "Energy bound must be non-negative", field="energy_bound", value=energy_bound
        )

    G = _mode_form(basis, radius)
    det_G = G[0, 0] * G[1, 1] - G[0, 1] ** 2
    # iterate over the index whose range on the ellipse is shorter
    extent = np.sqrt(energy_bound * np.array([G[1, 1], G[0, 0]]) / det_G)
    outer_axis = int(np.argmin(extent))
    inner_axis = 1 - outer_axis
    outer_max = int(np.floor(extent[outer_axis])) + 1
    rows = 2 * outer_max + 1
    if rows > mode_cap:
        raise BoundTooLarge(rows, mode_cap)

    A = G[inner_axis, inner_axis]
    B = G[0, 1]
    C = G[outer_axis, outer_axis]
    outer = np.arange(-outer_max, outer_max + 1)
    center = -B * outer / A
    slack = (energy_bound - (C - B * B / A) * outer.astype(float) ** 2) / A
    half_width = np.sqrt(np.clip(slack, 0.0, None))
    low = np.floor(center - half_width).astype(np.int64) - 1
    high = np.ceil(center + half_width).astype(np.int64) + 1
    low = np.where(slack < 0, 0, low)
    high = np.where(slack < 0, -1, high)
    counts = high - low + 1
    candidates = int(counts.sum())
    if candidates > mode_cap + 4 * rows:
        raise BoundTooLarge(candidates, mode_cap)

    outer_idx = np.repeat(outer, counts)
    offsets = np.arange(candidates) - np.repeat(np.cumsum(counts) - counts, counts)
    inner_idx = np.repeat(low, counts) + offsets
    if outer_axis == 0:
        m_idx, n_idx = outer_idx, inner_idx
    else:
        m_idx, n_idx = inner_idx, outer_idx

    w1, w2 = basis.dual_basis()
    lam1 = m_idx * w1[0] + n_idx * w2[0]
    lam2 = m_idx * w1[1] + n_idx * w2[1]
    values = TWO_PI**2 * (lam1**2 / sinh(radius) ** 2 + lam2**2 / cosh(radius) ** 2)
    keep = values <= energy_bound
    if int(keep.sum()) > mode_cap:
        raise BoundTooLarge(int(keep.sum()), mode_cap)

    m_idx, n_idx = m_idx[keep], n_idx[keep]
    lam1, lam2, values = lam1[keep], lam2[keep], values[keep]
    order = np.lexsort((n_idx, m_idx, values))
    return [
        ModeLevel(
            DualMode((int(m_idx[k]), int(n_idx[k])), (float(lam1[k]), float(lam2[k]))),
            float(values[k]),
        )
        for k in order
    ]


def cross_section_area(basis: LatticeBasis, r: float) -> float:
    """Area of the torus T^2_r, sinh(r) cosh(r) covol."""
    if r <= 0:
        raise NonPositiveRadius(r)
    return sinh(r) * cosh(r) * basis.covolume()


def solve_tube_radius(basis: LatticeBasis, boundary_area: float) -> TubeGeometry:
    """Radius at which the cross-section area reaches ``boundary_area``."""
    return TubeGeometry.from_area(basis.covolume(), boundary_area)


def dehn_coefficients(shape: ConeTube, p: int, q: int) -> tuple[float, float]:
    """Generalized Dehn surgery coefficients (2 pi / alpha) (p, q)."""
    if gcd(int(p), int(q)) != 1:
        raise NotCoprime(p, q)
    scale = TWO_PI / shape.alpha
    return scale * p, scale * q


def reduce_basis(
    basis: LatticeBasis, metric: Optional[np.ndarray] = None
) -> tuple[LatticeBasis, np.ndarray]:
    """Lagrange-Gauss reduction with respect to a constant quadratic form.

    Returns the reduced basis and the unimodular integer matrix U with
    reduced.matrix == basis.matrix @ U. The first reduced vector is a
    shortest nonzero lattice vector for the form.
    """
    M = np.eye(2) if metric is None else np.asarray(metric, dtype=float)
    B = basis.matrix.copy()
    U = np.eye(2, dtype=np.int64)

    def norm2(v: np.ndarray) -> float:
        return float(v @ M @ v)

    if norm2(B[:, 0]) > norm2(B[:, 1]):
        B = B[:, ::-1].copy()
        U = U[:, ::-1].copy()
    for _ in range(10_000):
        mu = int(np.rint((B[:, 0] @ M @ B[:, 1]) / norm2(B[:, 0])))
        B[:, 1] -= mu * B[:, 0]
        U[:, 1] -= mu * U[:, 0]
        if norm2(B[:, 1]) >= norm2(B[:, 0]):
            break
        B = B[:, ::-1].copy()
        U = U[:, ::-1].copy()
    return LatticeBasis.from_matrix(B), U


def boundary_metric(radius: float) -> np.ndarray:
    """Flat metric diag(sinh^2 R, cosh^2 R) of the boundary torus."""
    return np.diag([sinh(radius) ** 2, cosh(radius) ** 2])


def boundary_torus_aspect(basis: LatticeBasis, radius: float) -> float:
    """Ratio of the two reduced side lengths of T^2_R; 1 means square-like."""
    metric = boundary_metric(radius)
    reduced, _ = reduce_basis(basis, metric)
    b1 = np.asarray(reduced.v1)
    b2 = np.asarray(reduced.v2)
    return float(np.sqrt((b2 @ metric @ b2) / (b1 @ metric @ b1)))


def tube_constants(geometry: TubeGeometry) -> TubeConstants:
    """e^{2R} covol lies in [4A, 4A / (1 - e^{-4R})] for boundary area A."""
    area = geometry.boundary_area
    return TubeConstants(
        e2r_covolume=geometry.e2r_covolume,
        lower=4.0 * area,
        upper=4.0 * area / (1.0 - exp(-4.0 * geometry.radius)),
    )


def length_radius_defect(shape: ConeTube, geometry: TubeGeometry) -> float:
    """R - log(1/l)/2; bounded for smooth fillings with a fixed boundary area."""
    return geometry.radius - 0.5 * log(1.0 / shape.length)


def radius_for_area(covol: float, boundary_area: float) -> float:
    return 0.5 * asinh(2.0 * boundary_area / covol)
