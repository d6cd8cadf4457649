"""Deformation scan interface: families of tubes and the scans run along them."""

from abc import ABC, abstractmethod
from typing import Optional

from ...domain.family import FamilyMember, FamilySpec
from ...domain.spectra import CountingReport
from ...domain.value_objects import BoundarySpec


class IDeformationScanService(ABC):
    """Interface for family generation and the clustering and small-eigenvalue scans."""

    @abstractmethod
    def generate(self, spec: FamilySpec) -> list[FamilyMember]:
        """Members in family order with their tube geometry and boundary-torus shape.

        Raises:
            BadFamily: If covolumes do not decrease or a member classifies
                inconsistently with the family kind
        """
        pass

    @abstractmethod
    def run_clustering(
        self,
        spec: FamilySpec,
        x: float,
        right_bc: Optional[BoundarySpec] = None,
        small_below: Optional[float] = None,
    ) -> CountingReport:
        """N[1, 1 + x^2] along the family, fitted against R and against log(1/covolume).

        Args:
            spec: Family with at least four members
            x: Window parameter
            right_bc: Condition at R, natural by default
            small_below: Adds the table of eigenvalues below this threshold

        Raises:
            BadFamily: If the family has fewer than four members
        """
        pass

    @abstractmethod
    def small_eigenvalue_table(
        self, spec: FamilySpec, spectral_bound: float, right_bc: Optional[BoundarySpec] = None
    ) -> tuple[tuple[float, ...], ...]:
        """Per member, the tube eigenvalues below ``spectral_bound`` in (0, 1)."""
        pass
