"""Data Transfer Objects for command inputs and reports.

Kept separate from the domain models; the mappers convert between them.
"""

from .family_dtos import (
    ConeFamilyConfig,
    FamilySpecRequest,
    IrrationalFamilyConfig,
    SmoothFillingConfig,
)
from .lattice_dtos import (
    ConeInput,
    LatticeInput,
    ModeResponse,
    ModeTableResponse,
    RadiusResponse,
    ShapeResponse,
)
from .mappers import ReportMapper
from .report_dtos import (
    ComparisonRowResponse,
    CountingReportResponse,
    CountingRowResponse,
    LinearFitResponse,
    OracleComparisonResponse,
    SlabReportResponse,
)
from .spectrum_dtos import SpectrumEntryResponse, TubeSpectrumResponse

__all__ = [
    # Inputs
    "ConeInput",
    "LatticeInput",
    "SmoothFillingConfig",
    "ConeFamilyConfig",
    "IrrationalFamilyConfig",
    "FamilySpecRequest",
    # Reports
    "ShapeResponse",
    "ModeResponse",
    "ModeTableResponse",
    "RadiusResponse",
    "SpectrumEntryResponse",
    "TubeSpectrumResponse",
    "LinearFitResponse",
    "CountingRowResponse",
    "CountingReportResponse",
    "SlabReportResponse",
    "ComparisonRowResponse",
    "OracleComparisonResponse",
    # Mapping
    "ReportMapper",
]
