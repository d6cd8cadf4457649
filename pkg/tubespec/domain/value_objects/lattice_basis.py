"""Lattice basis and dual-mode value objects.

Coordinates are (theta, z): theta is the dimensionless angle coordinate of
the torus, z the length coordinate along the core direction.
"""

from dataclasses import dataclass
from math import hypot
from typing import Sequence

import numpy as np

from ...core.exceptions import DegenerateLattice, ValidationError

DEGENERACY_TOLERANCE = 1e-14
DUALITY_TOLERANCE = 1e-12


def _as_pair(vector: Sequence[float], name: str) -> tuple[float, float]:
    try:
        theta, z = (float(component) for component in vector)
    except (TypeError, ValueError) as e:
        raise ValidationError(
            f"{name} must be a pair of real numbers", field=name, value=vector
        ) from e
    if not (np.isfinite(theta) and np.isfinite(z)):
        raise ValidationError(f"{name} must be finite", field=name, value=vector)
    return theta, z


@dataclass(frozen=True)
class LatticeBasis:
    """Immutable pair of spanning vectors of a lattice in R^2.

    Construction rejects dependent vectors: |det| must exceed 1e-14 times
    the product of the vector norms.
    """

    v1: tuple[float, float]
    v2: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "v1", _as_pair(self.v1, "v1"))
        object.__setattr__(self, "v2", _as_pair(self.v2, "v2"))
        scale = hypot(*self.v1) * hypot(*self.v2)
        if scale == 0.0 or abs(self.determinant) <= DEGENERACY_TOLERANCE * scale:
            raise DegenerateLattice(self.determinant)

    @classmethod
    def from_cone(cls, alpha: float, twist: float, length: float) -> "LatticeBasis":
        """Create the basis (alpha, 0), (twist, length) of a cone tube."""
        if alpha <= 0 or length <= 0:
            raise ValidationError(
                "Cone angle and core length must be positive",
                field="cone",
                value=(alpha, twist, length),
            )
        return cls((alpha, 0.0), (twist, length))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "LatticeBasis":
        """Create a basis from a 2x2 matrix whose columns are v1, v2."""
        matrix = np.asarray(matrix, dtype=float)
        return cls(tuple(matrix[:, 0]), tuple(matrix[:, 1]))

    @property
    def matrix(self) -> np.ndarray:
        """Basis matrix with v1, v2 as columns."""
        return np.array([[self.v1[0], self.v2[0]], [self.v1[1], self.v2[1]]])

    @property
    def determinant(self) -> float:
        return self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]

    def covolume(self) -> float:
        """Area of a fundamental domain, |det(v1, v2)|."""
        return abs(self.determinant)

    def dual_basis(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """Return (w1, w2) with <w_i, v_j> = delta_ij.

        These are the columns of the inverse transpose of the basis matrix.
        """
        det = self.determinant
        (a, b), (c, d) = self.v1, self.v2
        w1 = (d / det, -c / det)
        w2 = (-b / det, a / det)
        return w1, w2

    def scaled(self, factor: float) -> "LatticeBasis":
        """Return the basis of the lattice scaled by a positive factor."""
        if factor <= 0:
            raise ValidationError("Scale factor must be positive", field="factor", value=factor)
        return LatticeBasis(
            (self.v1[0] * factor, self.v1[1] * factor),
            (self.v2[0] * factor, self.v2[1] * factor),
        )

    def to_list(self) -> list[list[float]]:
        return [list(self.v1), list(self.v2)]


@dataclass(frozen=True)
class DualMode:
    """Element lambda = m*w1 + n*w2 of the dual lattice with its index (m, n)."""

    index: tuple[int, int]
    lam: tuple[float, float]

    @classmethod
    def from_index(cls, basis: LatticeBasis, m: int, n: int) -> "DualMode":
        w1, w2 = basis.dual_basis()
        return cls(
            (int(m), int(n)),
            (m * w1[0] + n * w2[0], m * w1[1] + n * w2[1]),
        )

    @classmethod
    def zero(cls) -> "DualMode":
        return cls((0, 0), (0.0, 0.0))

    @property
    def is_zero(self) -> bool:
        return self.index == (0, 0)

    @property
    def norm(self) -> float:
        return hypot(*self.lam)

    def negated(self) -> "DualMode":
        return DualMode((-self.index[0], -self.index[1]), (-self.lam[0], -self.lam[1]))

    def pairings(self, basis: LatticeBasis) -> tuple[float, float]:
        """Pairings <lambda, v1>, <lambda, v2>; integers for a true dual vector."""
        return (
            self.lam[0] * basis.v1[0] + self.lam[1] * basis.v1[1],
            self.lam[0] * basis.v2[0] + self.lam[1] * basis.v2[1],
        )

    def is_dual_to(self, basis: LatticeBasis, tol: float = DUALITY_TOLERANCE) -> bool:
        return all(abs(p - round(p)) <= tol * max(1.0, abs(p)) for p in self.pairings(basis))
