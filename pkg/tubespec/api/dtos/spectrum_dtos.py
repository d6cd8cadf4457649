"""Tube spectrum response DTOs."""

from typing import ClassVar

from pydantic import BaseModel, Field

from ...domain.spectra import SpectrumEntry, TubeSpectrum


class SpectrumEntryResponse(BaseModel):
    value: float
    error_estimate: float
    m: int
    n: int
    level: int = Field(..., description="Index of the eigenvalue within its mode")

    @classmethod
    def from_domain(cls, entry: SpectrumEntry) -> "SpectrumEntryResponse":
        m, n = entry.mode.index
        return cls(
            value=entry.value, error_estimate=entry.error_estimate, m=m, n=n, level=entry.level
        )


class TubeSpectrumResponse(BaseModel):
    """Eigenvalues of the tube in a window, tagged by mode and level."""

    basis: list[list[float]]
    radius: float
    boundary_area: float
    right_bc: str
    window: tuple[float, float]
    truncation_bound: float
    modes_solved: int
    entries: list[SpectrumEntryResponse]

    CSV_HEADER: ClassVar[tuple[str, ...]] = ("value", "error_estimate", "m", "n", "level")

    @classmethod
    def from_domain(cls, spectrum: TubeSpectrum) -> "TubeSpectrumResponse":
        return cls(
            basis=spectrum.basis.to_list(),
            radius=spectrum.geometry.radius,
            boundary_area=spectrum.geometry.boundary_area,
            right_bc=spectrum.right_bc.right_label,
            window=spectrum.window,
            truncation_bound=spectrum.truncation_bound,
            modes_solved=spectrum.modes_solved,
            entries=[SpectrumEntryResponse.from_domain(entry) for entry in spectrum.entries],
        )

    def csv_rows(self) -> list[list]:
        return [[e.value, e.error_estimate, e.m, e.n, e.level] for e in self.entries]
