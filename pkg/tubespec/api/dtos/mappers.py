"""Centralized mapping from domain results to response DTOs.

Commands go through ``ReportMapper`` so that every report is built the same
way regardless of which service produced it.
"""

from typing import Optional

from ...domain.lattice import (
    ConeTube,
    ModeLevel,
    TubeShapeClass,
    length_radius_defect,
    tube_constants,
)
from ...domain.spectra import CountingReport, OracleComparison, SlabReport, TubeSpectrum
from ...domain.value_objects import TubeGeometry
from .lattice_dtos import ModeResponse, ModeTableResponse, RadiusResponse, ShapeResponse
from .report_dtos import CountingReportResponse, OracleComparisonResponse, SlabReportResponse
from .spectrum_dtos import TubeSpectrumResponse


class ReportMapper:
    """Single point of access for domain-to-DTO conversions."""

    @staticmethod
    def spectrum(spectrum: TubeSpectrum) -> TubeSpectrumResponse:
        return TubeSpectrumResponse.from_domain(spectrum)

    @staticmethod
    def mode_table(
        shape: TubeShapeClass,
        geometry: TubeGeometry,
        levels: list[ModeLevel],
        energy_bound: float,
    ) -> ModeTableResponse:
        return ModeTableResponse(
            shape=ShapeResponse.from_domain(shape),
            radius=geometry.radius,
            energy_bound=energy_bound,
            modes=[ModeResponse.from_domain(level) for level in levels],
        )

    @staticmethod
    def radius(
        shape: TubeShapeClass,
        geometry: TubeGeometry,
        aspect: float,
        slack: Optional[float] = None,
    ) -> RadiusResponse:
        constants = tube_constants(geometry)
        defect = None
        if isinstance(shape, ConeTube) and shape.is_smooth_filling():
            defect = length_radius_defect(shape, geometry)
        return RadiusResponse.from_domain(
            shape, geometry, constants.lower, constants.upper, aspect, defect, slack
        )

    @staticmethod
    def counting(report: CountingReport) -> CountingReportResponse:
        return CountingReportResponse.from_domain(report)

    @staticmethod
    def slab(report: SlabReport, eigenvalue: Optional[float] = None) -> SlabReportResponse:
        return SlabReportResponse.from_domain(report, eigenvalue)

    @staticmethod
    def comparison(comparison: OracleComparison) -> OracleComparisonResponse:
        return OracleComparisonResponse.from_domain(comparison)
