"""Tube spectrum service interface: mode assembly, counting and tube-side checks."""

from abc import ABC, abstractmethod
from typing import Optional, Sequence

from ...core.config.app_config import SolverConfig
from ...domain.spectra import CountingReport, GreensStudy, SlabReport, TubeSpectrum, WindowCount
from ...domain.tube_function import TubeFunction
from ...domain.value_objects import BoundarySpec, DualMode, LatticeBasis, TubeGeometry


class ITubeSpectrumService(ABC):
    """Interface for assembling tube spectra from the mode decomposition."""

    @abstractmethod
    def assemble_spectrum(
        self,
        basis: LatticeBasis,
        geometry: TubeGeometry,
        right_bc: BoundarySpec,
        window: tuple[float, float],
        config: Optional[SolverConfig] = None,
        truncation_bound: Optional[float] = None,
    ) -> TubeSpectrum:
        """Union of the mode spectra in [a, b] over all modes with gap <= b.

        Under a Robin coefficient above coth(2R) the gap cut-off is raised by
        the depth of the zero-mode ground state below 0.

        Args:
            basis: Lattice basis of the base torus
            geometry: Tube radius and boundary area
            right_bc: Condition at r = R (Friedrichs at r = 0)
            window: Closed window [a, b]
            config: Solver settings
            truncation_bound: Mode gap cut-off; defaults to b and must not be below it

        Raises:
            BadConfig: If the window is malformed
            BoundTooLarge: If too many modes fall under the cut-off
        """
        pass

    @abstractmethod
    def counting_function(self, spectrum: TubeSpectrum, a: float, b: float) -> WindowCount:
        """Strict and error-aware counts of entries in [a, b].

        Both edges are widened by the solver's roundoff margin tol_eig * max(1, |edge|).

        Raises:
            WindowNotCovered: If [a, b] is not inside the assembled window
        """
        pass

    @abstractmethod
    def clustering_scan(
        self,
        family: Sequence[tuple[LatticeBasis, TubeGeometry]],
        x: float,
        right_bc: BoundarySpec,
        config: Optional[SolverConfig] = None,
    ) -> CountingReport:
        """Counts N[1, 1 + x^2] along a family with a least-squares slope against R."""
        pass

    @abstractmethod
    def model_clustering_scan(
        self, radii: Sequence[float], x: float, config: Optional[SolverConfig] = None
    ) -> CountingReport:
        """The same scan for the model operator -d^2/dr^2 + 1 with Dirichlet ends."""
        pass

    @abstractmethod
    def greens_residual(self, f: TubeFunction, eigenvalue: float, r_cut: float) -> float:
        """|int |df|^2 - int f (mu f) - int_{T^2_r} f d_r f| over T^2_(0, r_cut]."""
        pass

    @abstractmethod
    def greens_convergence(
        self,
        mode: DualMode,
        radius: float,
        right_bc: BoundarySpec,
        r_cut: float,
        levels: int = 4,
        index: int = 0,
        config: Optional[SolverConfig] = None,
    ) -> GreensStudy:
        """Green defect of one radial eigenpair as the mesh is bisected ``levels - 1`` times.

        The last two defects are Richardson-combined into the extrapolated value.

        Raises:
            ValidationError: If fewer than two levels are requested or r_cut is outside (0, R)
        """
        pass

    @abstractmethod
    def poincare_check(self, h: TubeFunction) -> float:
        """||dh||^2 / ||h||^2 for a compactly supported tube function.

        Raises:
            ZeroFunction: If h vanishes identically
            ValidationError: If h does not vanish at both ends
        """
        pass

    @abstractmethod
    def slab_localization(
        self,
        f: TubeFunction,
        rho: float,
        c: float,
        spectral_bound: float,
        eigenvalue: Optional[float] = None,
    ) -> SlabReport:
        """Search r in [rho + 2, rho + c] with small slab and boundary H^1 mass.

        Raises:
            NotNormalized: If ||f|| differs from 1
            TubeTooShort: If R < rho + c
            ValidationError: If c <= 4 or the spectral bound is outside (0, 1)
        """
        pass
