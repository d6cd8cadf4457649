"""Grids and discrete operators of the 3D oracle.

The cross-section is parametrized by lattice coordinates s in [0, 1)^2,
x = s1 b1 + s2 b2 for a reduced basis (b1, b2). Lattice translations are
integer shifts of s, so periodic wrapping carries the twist.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np
from scipy import sparse

from .value_objects import LatticeBasis


class MetricKind(str, Enum):
    """Radial warping of the cross-section: (sinh r, cosh r) or the flat cone (r, 1)."""

    TUBE = "tube"
    FLAT = "flat"


class MassScheme(str, Enum):
    LUMPED = "lumped"
    CONSISTENT = "consistent"
    BLENDED = "blended"


class InnerBoundary(str, Enum):
    NATURAL = "natural"
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class GridSpec:
    """Resolution and discretization choices of an oracle problem.

    ``n1``/``n2`` left unset are derived from the modes the grid must
    resolve. A single node along an axis restricts the problem to modes
    that are constant along that axis.
    """

    r_cells: int = 64
    grading: float = 2.0
    n1: Optional[int] = None
    n2: Optional[int] = None
    metric: MetricKind = MetricKind.TUBE
    inner_bc: InnerBoundary = InnerBoundary.NATURAL
    mass_scheme: MassScheme = MassScheme.BLENDED

    def refined(self, n1: int, n2: int) -> "GridSpec":
        """Uniform refinement: every grid count doubled; collapsed axes stay collapsed."""
        return replace(
            self,
            r_cells=2 * self.r_cells,
            n1=n1 if n1 == 1 else 2 * n1,
            n2=n2 if n2 == 1 else 2 * n2,
        )


@dataclass(frozen=True)
class CurvedGrid:
    """Graded radial nodes on [epsilon, R] times a periodic n1 x n2 grid in s."""

    radius: float
    epsilon: float
    r_nodes: np.ndarray
    n1: int
    n2: int
    basis: LatticeBasis
    metric: MetricKind = MetricKind.TUBE

    @property
    def r_cells(self) -> int:
        return int(self.r_nodes.size - 1)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.r_nodes.size, self.n1, self.n2

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def radial_factors(self, r: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(w, 1/D_theta, 1/D_z): volume weight and inverse warping factors."""
        r = np.asarray(r, dtype=float)
        if self.metric is MetricKind.FLAT:
            return r, 1.0 / r**2, np.ones_like(r)
        sh, ch = np.sinh(r), np.cosh(r)
        return sh * ch, 1.0 / sh**2, 1.0 / ch**2

    def inverse_form(self) -> np.ndarray:
        """C = B^-1; the s-metric inverse is sum_a C[:, a] C[:, a]^T / D_a."""
        return np.linalg.inv(self.basis.matrix)

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        r_mid = 0.5 * (self.r_nodes[:-1] + self.r_nodes[1:])
        s1 = (np.arange(self.n1) + 0.5) / self.n1
        s2 = (np.arange(self.n2) + 0.5) / self.n2
        return np.meshgrid(r_mid, s1, s2, indexing="ij")

    def node_coordinates(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        s1 = np.arange(self.n1) / self.n1
        s2 = np.arange(self.n2) / self.n2
        return np.meshgrid(self.r_nodes, s1, s2, indexing="ij")


@dataclass(frozen=True)
class GridProblem:
    """Generalized eigenproblem K u = lambda M u on the free nodes of a grid."""

    grid: CurvedGrid
    stiffness: sparse.csr_matrix
    mass: sparse.csr_matrix
    free: np.ndarray
    right_bc: str
    inner_bc: InnerBoundary
    mass_scheme: MassScheme
    cell_factor: np.ndarray = field(repr=False)

    @property
    def dimension(self) -> int:
        return int(np.count_nonzero(self.free))

    def restricted(self) -> tuple[sparse.csr_matrix, sparse.csr_matrix]:
        """Stiffness and mass with the Dirichlet nodes removed."""
        index = np.flatnonzero(self.free)
        return (
            self.stiffness[index][:, index].tocsr(),
            self.mass[index][:, index].tocsr(),
        )

    def expand(self, vectors: np.ndarray) -> np.ndarray:
        """Embed free-node vectors into the full grid, zero on Dirichlet nodes."""
        vectors = np.asarray(vectors)
        full = np.zeros((self.free.size,) + vectors.shape[1:], dtype=vectors.dtype)
        full[self.free] = vectors
        return full
