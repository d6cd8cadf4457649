"""FamilySpec config file DTOs.

The file is a JSON object whose ``family`` member is a discriminated union
on ``kind``:

    {"family": {"kind": "smooth_filling", "lengths": [0.1, 0.05]},
     "boundary_area": 1.0}
"""

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

from ...core.config.app_config import SolverConfig
from ...domain.family import (
    GOLDEN_TWIST,
    ConeFamily,
    FamilyShape,
    FamilySpec,
    IrrationalFamily,
    SmoothFilling,
)
from .lattice_dtos import LatticeInput


class SmoothFillingConfig(BaseModel):
    kind: Literal["smooth_filling"] = "smooth_filling"
    lengths: list[float] = Field(..., min_length=1, description="Core lengths l_k")
    twist: float = Field(GOLDEN_TWIST, description="Twist of the second generator")

    def to_domain(self) -> SmoothFilling:
        return SmoothFilling(lengths=tuple(self.lengths), twist=self.twist)


class ConeFamilyConfig(BaseModel):
    kind: Literal["cone"] = "cone"
    alphas: list[float] = Field(..., min_length=1, description="Cone angles")
    length_law: Literal["area", "explicit"] = "area"
    area: Optional[float] = Field(None, description="Constant alpha * l for the area law")
    lengths: Optional[list[float]] = None
    twist_fraction: float = Field(0.0, ge=0, lt=1)

    @model_validator(mode="after")
    def check_law(self):
        if self.length_law == "area" and self.area is None:
            raise ValueError("length_law 'area' needs 'area'")
        if self.length_law == "explicit" and self.lengths is None:
            raise ValueError("length_law 'explicit' needs 'lengths'")
        return self

    def to_domain(self) -> ConeFamily:
        return ConeFamily(
            alphas=tuple(self.alphas),
            length_law=self.length_law,
            area=self.area,
            lengths=tuple(self.lengths) if self.lengths is not None else None,
            twist_fraction=self.twist_fraction,
        )


class IrrationalFamilyConfig(BaseModel):
    kind: Literal["irrational"] = "irrational"
    basis: list[list[float]] = Field(..., description="Base basis [[a, b], [c, d]]")
    shrink: list[float] = Field(..., min_length=1, description="Scale factors s_k")

    def to_domain(self) -> IrrationalFamily:
        return IrrationalFamily(basis=LatticeInput(basis=self.basis).to_domain(), shrink=tuple(self.shrink))


FamilyConfig = Annotated[
    Union[SmoothFillingConfig, ConeFamilyConfig, IrrationalFamilyConfig],
    Field(discriminator="kind"),
]


class FamilySpecRequest(BaseModel):
    """Content of a ``--family`` file."""

    family: FamilyConfig
    boundary_area: float = Field(1.0, gt=0)
    solver: Optional[SolverConfig] = None

    def to_domain(self, boundary_area: Optional[float] = None) -> FamilySpec:
        shape: FamilyShape = self.family.to_domain()
        return FamilySpec(
            shape=shape,
            boundary_area=boundary_area if boundary_area is not None else self.boundary_area,
            solver=self.solver,
        )
