"""Half-line solver interface defining the eigenvalue operations on (0, R]."""

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from ...core.config.app_config import SolverConfig
from ...domain.potentials import RadialPotential
from ...domain.spectra import EigenList
from ...domain.value_objects import BoundarySpec


class ISturmSolver(ABC):
    """Interface for the radial eigenvalue solver.

    Realizes -d^2/dr^2 + V on (0, R] with the Friedrichs condition (or a
    Dirichlet cut at epsilon) at r = 0 and a Dirichlet, Robin or natural
    condition at r = R.
    """

    @abstractmethod
    def solve(
        self,
        potential: RadialPotential,
        radius: float,
        bc: BoundarySpec,
        window: Optional[tuple[float, float]] = None,
        count: Optional[int] = None,
        config: Optional[SolverConfig] = None,
    ) -> EigenList:
        """Eigenvalues in a window or the lowest ``count`` eigenvalues.

        Args:
            potential: Radial potential with its gauge form
            radius: Outer radius R
            bc: Boundary conditions
            window: Closed window [a, b]; exclusive with ``count``. Each edge is
                widened by tol_eig * max(1, |edge|) and by the value's error estimate
            count: Number of lowest eigenvalues; exclusive with ``window``
            config: Solver settings overriding the injected defaults

        Returns:
            Mesh-extrapolated eigenvalues with error estimates; empty when
            the window holds no eigenvalue

        Raises:
            BadConfig: If the request is malformed
            NoConvergence: If the epsilon ladder is exhausted
        """
        pass

    @abstractmethod
    def count_window(
        self,
        potential: RadialPotential,
        radius: float,
        bc: BoundarySpec,
        window: tuple[float, float],
        config: Optional[SolverConfig] = None,
    ) -> int:
        """Number of eigenvalues in [a, b] from Sturm sign counts.

        Raises:
            BadConfig: If the request is malformed
            NoConvergence: If the count does not settle along the ladder
        """
        pass

    @abstractmethod
    def rayleigh_quotient(
        self,
        nodes: np.ndarray,
        samples: np.ndarray,
        potential: RadialPotential,
        bc: Optional[BoundarySpec] = None,
        config: Optional[SolverConfig] = None,
    ) -> float:
        """(int u'^2 + V u^2) / int u^2 for u sampled at ``nodes``, by the solver's quadrature.

        Raises:
            ZeroFunction: If the samples vanish identically
            ValidationError: If the samples do not respect the boundary conditions
        """
        pass

    @abstractmethod
    def discrete_eigenvalues(
        self,
        potential: RadialPotential,
        radius: float,
        bc: BoundarySpec,
        count: int,
        config: Optional[SolverConfig] = None,
    ) -> EigenList:
        """Lowest eigenvalues of a single discretization, without extrapolation."""
        pass
