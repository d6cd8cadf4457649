"""3D oracle interface: brute-force discretization of the tube Laplacian."""

from abc import ABC, abstractmethod
from typing import Callable, Optional

import numpy as np

from ...core.config.app_config import OracleConfig
from ...domain.grid import GridProblem, GridSpec
from ...domain.spectra import BracketReport, OracleComparison, SparseSpectralResult
from ...domain.value_objects import BoundarySpec, LatticeBasis, TubeGeometry

ConformalFactor = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


class IGridOracle(ABC):
    """Interface for the grid oracle that validates the mode decomposition."""

    @abstractmethod
    def build_operator(
        self,
        basis: LatticeBasis,
        geometry: TubeGeometry,
        right_bc: BoundarySpec,
        spec: Optional[GridSpec] = None,
        epsilon: Optional[float] = None,
        resolve_energy: Optional[float] = None,
        conformal: Optional[ConformalFactor] = None,
        config: Optional[OracleConfig] = None,
    ) -> GridProblem:
        """Assemble stiffness and mass of the quadratic form on [epsilon, R] x T^2.

        Args:
            basis: Lattice basis of the base torus
            geometry: Tube radius
            right_bc: Dirichlet or natural at r = R
            spec: Grid resolution and schemes; defaults from the oracle config
            epsilon: Inner truncation radius; defaults to a fraction of R
            resolve_energy: Modes with cross-section eigenvalue at R up to this
                value must be resolved by the cross-section grid
            conformal: Length scale factor rho(r, s1, s2) of a conformal metric change
            config: Oracle settings

        Raises:
            GridTooCoarse: If an axis has too few nodes per resolved period
            BadConfig: If epsilon or the boundary condition is unsupported
        """
        pass

    @abstractmethod
    def oracle_spectrum(
        self, problem: GridProblem, k: int, config: Optional[OracleConfig] = None
    ) -> SparseSpectralResult:
        """Lowest k generalized eigenvalues with verified residuals.

        Raises:
            IterationFailure: If the eigensolver fails or residuals are too large
        """
        pass

    @abstractmethod
    def quasi_isometry_bracket(
        self, first: GridProblem, second: GridProblem, beta: float, k: int
    ) -> BracketReport:
        """Compare the lowest k eigenvalues of two conformally related metrics.

        Raises:
            NotQuasiIsometric: If the cell-wise metric ratio exceeds 1 + beta
        """
        pass

    @abstractmethod
    def oracle_compare(
        self,
        basis: LatticeBasis,
        geometry: TubeGeometry,
        k: int,
        right_bc: BoundarySpec,
        refine: bool = False,
        spec: Optional[GridSpec] = None,
    ) -> OracleComparison:
        """Lowest k of the mode decomposition against the oracle, optionally refined once."""
        pass
