"""Deformation scan service implementation."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from math import isclose, pi
from typing import Optional

import numpy as np

from ..core.config.app_config import AppConfig, get_config
from ..core.exceptions import BadFamily, ValidationError
from ..core.logging import get_logger
from ..domain.family import ConeFamily, FamilyMember, FamilySpec, IrrationalFamily, SmoothFilling
from ..domain.lattice import (
    ConeTube,
    IrrationalTube,
    boundary_torus_aspect,
    classify,
    solve_tube_radius,
)
from ..domain.spectra import CountingReport, LinearFit
from ..domain.value_objects import BoundarySpec
from ..utils.extrapolation import linear_fit
from .interfaces.deformation_scan import IDeformationScanService
from .interfaces.tube_spectrum_service import ITubeSpectrumService

MIN_CLUSTERING_MEMBERS = 4
ALPHA_RTOL = 1e-12
SMALL_WINDOW_FLOOR = -1.0


class DeformationScanService(IDeformationScanService):
    """Generates tube families and drives scans member by member."""

    def __init__(self, spectrum_service: ITubeSpectrumService, config: Optional[AppConfig] = None):
        self._spectrum_service = spectrum_service
        self._config = config or get_config()
        self._logger = get_logger(__name__)

    def generate(self, spec: FamilySpec) -> list[FamilyMember]:
        shape = spec.shape
        if isinstance(shape, IrrationalFamily):
            cones = [None] * len(shape.shrink)
            bases = shape.bases()
        else:
            cones = shape.shapes()
            bases = [cone.basis() for cone in cones]

        members = []
        for index, (basis, cone) in enumerate(zip(bases, cones)):
            geometry = solve_tube_radius(basis, spec.boundary_area)
            aspect = boundary_torus_aspect(basis, geometry.radius)
            members.append(FamilyMember(index, basis, geometry, aspect, cone))

        self._check_covolumes(spec, members)
        self._check_classification(spec, members)
        self._logger.info(
            "Family generated",
            {"kind": spec.kind, "members": len(members), "deepest_radius": members[-1].radius},
        )
        return members

    @staticmethod
    def _check_covolumes(spec: FamilySpec, members: list[FamilyMember]) -> None:
        covolumes = np.array([member.covolume for member in members])
        steps = np.diff(covolumes)
        # the area law keeps alpha * l, and with it the covolume, fixed
        constant_allowed = isinstance(spec.shape, ConeFamily) and spec.shape.length_law == "area"
        if np.any(steps > 0) or (not constant_allowed and np.any(steps == 0)):
            raise BadFamily(
                "Covolume must decrease along the family",
                field="shape",
                value=covolumes.tolist(),
                validation_rule="covolume strictly decreasing",
            )

    def _check_classification(self, spec: FamilySpec, members: list[FamilyMember]) -> None:
        lattice = self._config.lattice
        for member in members:
            found = classify(member.basis, lattice.z_tolerance, lattice.coefficient_bound)
            if isinstance(spec.shape, IrrationalFamily):
                consistent = isinstance(found, IrrationalTube)
            else:
                consistent = isinstance(found, ConeTube) and isclose(
                    found.alpha, member.shape.alpha, rel_tol=ALPHA_RTOL
                )
                if isinstance(spec.shape, SmoothFilling):
                    consistent = consistent and found.is_smooth_filling(ALPHA_RTOL)
            if not consistent:
                raise BadFamily(
                    f"Member {member.index} does not classify as {spec.kind}",
                    field="shape",
                    value=member.basis.to_list(),
                )

    def run_clustering(
        self,
        spec: FamilySpec,
        x: float,
        right_bc: Optional[BoundarySpec] = None,
        small_below: Optional[float] = None,
    ) -> CountingReport:
        right_bc = right_bc or BoundarySpec.natural()
        members = self.generate(spec)
        if len(members) < MIN_CLUSTERING_MEMBERS:
            raise BadFamily(
                f"Clustering needs at least {MIN_CLUSTERING_MEMBERS} members",
                field="shape",
                value=len(members),
            )
        family = [(member.basis, member.geometry) for member in members]
        report = self._spectrum_service.clustering_scan(family, x, right_bc, spec.solver)

        log_inverse = np.log(1.0 / np.array([row.covolume for row in report.rows]))
        counts = np.array([row.count for row in report.rows], dtype=float)
        reference = x / (2.0 * pi)
        slope, intercept = linear_fit(log_inverse, counts)
        area_fit = LinearFit(
            slope,
            intercept,
            reference,
            tuple(float(c - reference * t) for t, c in zip(log_inverse, counts)),
        )

        small = None
        if small_below is not None:
            small = self._table(members, spec, small_below, right_bc)
        return replace(report, area_fit=area_fit, small_eigenvalues=small)

    def small_eigenvalue_table(
        self, spec: FamilySpec, spectral_bound: float, right_bc: Optional[BoundarySpec] = None
    ) -> tuple[tuple[float, ...], ...]:
        return self._table(self.generate(spec), spec, spectral_bound, right_bc or BoundarySpec.natural())

    def _table(
        self,
        members: list[FamilyMember],
        spec: FamilySpec,
        spectral_bound: float,
        right_bc: BoundarySpec,
    ) -> tuple[tuple[float, ...], ...]:
        if not 0 < spectral_bound < 1:
            raise ValidationError(
                "Spectral bound must lie in (0, 1)", field="spectral_bound", value=spectral_bound
            )
        window = (SMALL_WINDOW_FLOOR, spectral_bound)

        def below(member: FamilyMember) -> tuple[float, ...]:
            spectrum = self._spectrum_service.assemble_spectrum(
                member.basis, member.geometry, right_bc, window, spec.solver
            )
            return tuple(float(v) for v in spectrum.values if v < spectral_bound)

        workers = max(1, min(self._config.jobs, len(members)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            table = tuple(pool.map(below, members))
        self._logger.info(
            "Small eigenvalue table",
            {"members": len(members), "counts": [len(row) for row in table]},
        )
        return table
