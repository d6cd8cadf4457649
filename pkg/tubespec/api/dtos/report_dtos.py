"""Report DTOs: clustering scans, slab localization and oracle comparisons."""

from typing import ClassVar, Optional

from pydantic import BaseModel, Field

from ...domain.spectra import (
    ComparisonRow,
    CountingReport,
    CountingRow,
    LinearFit,
    OracleComparison,
    SlabReport,
)


class LinearFitResponse(BaseModel):
    slope: float
    intercept: float
    reference_slope: float
    relative_deviation: float

    @classmethod
    def from_domain(cls, fit: LinearFit) -> "LinearFitResponse":
        return cls(
            slope=fit.slope,
            intercept=fit.intercept,
            reference_slope=fit.reference_slope,
            relative_deviation=fit.relative_deviation,
        )


class CountingRowResponse(BaseModel):
    R: float
    covol: float
    N: int
    N_tolerant: int
    x_over_pi_R: float

    @classmethod
    def from_domain(cls, row: CountingRow) -> "CountingRowResponse":
        return cls(
            R=row.radius,
            covol=row.covolume,
            N=row.count,
            N_tolerant=row.tolerant_count,
            x_over_pi_R=row.reference,
        )


class CountingReportResponse(BaseModel):
    """Window counts along a family with both fits."""

    window: tuple[float, float]
    x: float
    right_bc: str
    rows: list[CountingRowResponse]
    radius_fit: LinearFitResponse
    area_fit: Optional[LinearFitResponse] = None
    residual_bound: float = Field(..., description="max |N - x R / pi|")
    residual_trend: float = Field(..., description="Slope of the residuals against R")
    small_eigenvalues: Optional[list[list[float]]] = None

    CSV_HEADER: ClassVar[tuple[str, ...]] = ("R", "covol", "N", "x_over_pi_R")

    @classmethod
    def from_domain(cls, report: CountingReport) -> "CountingReportResponse":
        return cls(
            window=report.window,
            x=report.x,
            right_bc=report.right_bc,
            rows=[CountingRowResponse.from_domain(row) for row in report.rows],
            radius_fit=LinearFitResponse.from_domain(report.radius_fit),
            area_fit=LinearFitResponse.from_domain(report.area_fit) if report.area_fit else None,
            residual_bound=report.residual_bound,
            residual_trend=report.residual_trend,
            small_eigenvalues=(
                [list(row) for row in report.small_eigenvalues]
                if report.small_eigenvalues is not None
                else None
            ),
        )

    def csv_rows(self) -> list[list]:
        return [[row.R, row.covol, row.N, row.x_over_pi_R] for row in self.rows]


class SlabReportResponse(BaseModel):
    """Slab found by the localization search with its bounds."""

    radius: float
    slab_mass: float
    boundary_mass: float
    slab_bound: float
    boundary_bound: float
    slab_ok: bool
    inner_mass: float
    localization_bound: float
    localization_ok: bool
    eigenvalue: Optional[float] = None
    green_defect: Optional[float] = None
    green_bound: Optional[float] = None
    green_error: Optional[float] = None
    green_error_bound: Optional[float] = None

    CSV_HEADER: ClassVar[tuple[str, ...]] = (
        "radius",
        "slab_mass",
        "slab_bound",
        "boundary_mass",
        "boundary_bound",
        "inner_mass",
        "localization_bound",
    )

    @classmethod
    def from_domain(cls, report: SlabReport, eigenvalue: Optional[float] = None) -> "SlabReportResponse":
        return cls(
            radius=report.radius,
            slab_mass=report.slab_mass,
            boundary_mass=report.boundary_mass,
            slab_bound=report.slab_bound,
            boundary_bound=report.boundary_bound,
            slab_ok=report.slab_ok,
            inner_mass=report.inner_mass,
            localization_bound=report.localization_bound,
            localization_ok=report.localization_ok,
            eigenvalue=eigenvalue,
            green_defect=report.green_defect,
            green_bound=report.green_bound,
            green_error=report.green_error,
            green_error_bound=report.green_error_bound,
        )

    def csv_rows(self) -> list[list]:
        return [
            [
                self.radius,
                self.slab_mass,
                self.slab_bound,
                self.boundary_mass,
                self.boundary_bound,
                self.inner_mass,
                self.localization_bound,
            ]
        ]


class ComparisonRowResponse(BaseModel):
    index: int
    m: int
    n: int
    mode_value: float
    oracle_value: float
    deviation: float

    @classmethod
    def from_domain(cls, row: ComparisonRow) -> "ComparisonRowResponse":
        return cls(
            index=row.index,
            m=row.mode[0],
            n=row.mode[1],
            mode_value=row.mode_value,
            oracle_value=row.oracle_value,
            deviation=row.deviation,
        )


class OracleComparisonResponse(BaseModel):
    """Mode decomposition against the grid oracle."""

    rows: list[ComparisonRowResponse]
    max_deviation: float
    refined_rows: Optional[list[ComparisonRowResponse]] = None
    refined_max_deviation: Optional[float] = None

    CSV_HEADER: ClassVar[tuple[str, ...]] = (
        "index",
        "m",
        "n",
        "mode_value",
        "oracle_value",
        "deviation",
        "refined_oracle_value",
        "refined_deviation",
    )

    @classmethod
    def from_domain(cls, comparison: OracleComparison) -> "OracleComparisonResponse":
        refined = comparison.refined_rows
        return cls(
            rows=[ComparisonRowResponse.from_domain(row) for row in comparison.rows],
            max_deviation=comparison.max_deviation,
            refined_rows=(
                [ComparisonRowResponse.from_domain(row) for row in refined] if refined else None
            ),
            refined_max_deviation=comparison.refined_max_deviation,
        )

    def csv_rows(self) -> list[list]:
        refined = self.refined_rows or [None] * len(self.rows)
        return [
            [
                row.index,
                row.m,
                row.n,
                row.mode_value,
                row.oracle_value,
                row.deviation,
                fine.oracle_value if fine else "",
                fine.deviation if fine else "",
            ]
            for row, fine in zip(self.rows, refined)
        ]
