"""Lattice input and mode classification DTOs."""

from typing import ClassVar, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from ...domain.lattice import ConeTube, IrrationalTube, ModeLevel, TubeShapeClass
from ...domain.potentials import classify_endpoint, estimate_c2, frobenius_exponent
from ...domain.value_objects import LatticeBasis, TubeGeometry


class ConeInput(BaseModel):
    """Cone tube data: angle alpha, twist t and core length l."""

    alpha: float = Field(..., gt=0, description="Cone angle")
    twist: float = Field(0.0, description="Twist t")
    length: float = Field(..., gt=0, description="Core length l")

    @classmethod
    def parse(cls, text: str) -> "ConeInput":
        alpha, twist, length = _floats(text, 3, "--cone")
        return cls(alpha=alpha, twist=twist, length=length)


class LatticeInput(BaseModel):
    """Lattice file content: {"cone": {...}} or {"basis": [[a, b], [c, d]]}."""

    cone: Optional[ConeInput] = None
    basis: Optional[list[list[float]]] = Field(
        None, description="Spanning vectors v1 = [a, b], v2 = [c, d] in (theta, z)"
    )

    @field_validator("basis")
    @classmethod
    def validate_basis(cls, v):
        if v is not None and (len(v) != 2 or any(len(row) != 2 for row in v)):
            raise ValueError("basis must be two pairs [[a, b], [c, d]]")
        return v

    @model_validator(mode="after")
    def exactly_one(self):
        if (self.cone is None) == (self.basis is None):
            raise ValueError("Give exactly one of 'cone' or 'basis'")
        return self

    @classmethod
    def parse_basis(cls, text: str) -> "LatticeInput":
        a, b, c, d = _floats(text, 4, "--basis")
        return cls(basis=[[a, b], [c, d]])

    def to_domain(self) -> LatticeBasis:
        if self.cone is not None:
            return LatticeBasis.from_cone(self.cone.alpha, self.cone.twist, self.cone.length)
        return LatticeBasis(tuple(self.basis[0]), tuple(self.basis[1]))


def _floats(text: str, count: int, flag: str) -> list[float]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != count:
        raise ValueError(f"{flag} expects {count} comma-separated numbers")
    try:
        return [float(part) for part in parts]
    except ValueError as e:
        raise ValueError(f"{flag} expects {count} comma-separated numbers") from e


class ShapeResponse(BaseModel):
    """Classification of a lattice: cone tube in normal form or irrational."""

    kind: str = Field(..., description="cone or irrational")
    alpha: Optional[float] = None
    twist: Optional[float] = None
    length: Optional[float] = None
    coefficient_bound: Optional[int] = None

    @classmethod
    def from_domain(cls, shape: TubeShapeClass) -> "ShapeResponse":
        if isinstance(shape, ConeTube):
            return cls(kind="cone", alpha=shape.alpha, twist=shape.twist, length=shape.length)
        if isinstance(shape, IrrationalTube):
            return cls(kind="irrational", coefficient_bound=shape.coefficient_bound)
        raise TypeError(f"Unknown shape {type(shape).__name__}")


class ModeResponse(BaseModel):
    """A dual mode with its cross-section eigenvalue and endpoint class."""

    m: int
    n: int
    lam1: float
    lam2: float
    gap: float = Field(..., description="Cross-section eigenvalue at R")
    c2: float = Field(..., description="Estimated limit of r^2 V_lambda at 0")
    nu: float = Field(..., description="Frobenius exponent")
    endpoint: str = Field(..., description="LimitCircle or LimitPoint")

    @classmethod
    def from_domain(cls, level: ModeLevel) -> "ModeResponse":
        endpoint = classify_endpoint(level.mode)
        return cls(
            m=level.mode.index[0],
            n=level.mode.index[1],
            lam1=level.mode.lam[0],
            lam2=level.mode.lam[1],
            gap=level.value,
            c2=estimate_c2(level.mode),
            nu=frobenius_exponent(level.mode),
            endpoint=endpoint.kind.value,
        )

    def csv_row(self) -> list:
        return [self.m, self.n, self.lam1, self.lam2, self.gap, self.c2, self.nu, self.endpoint]


class ModeTableResponse(BaseModel):
    shape: ShapeResponse
    radius: float
    energy_bound: float
    modes: list[ModeResponse]

    CSV_HEADER: ClassVar[tuple[str, ...]] = ("m", "n", "lam1", "lam2", "gap", "c2", "nu", "endpoint")

    def csv_rows(self) -> list[list]:
        return [mode.csv_row() for mode in self.modes]


class RadiusResponse(BaseModel):
    """Tube radius under the boundary-area convention, with its two-sided bounds."""

    shape: ShapeResponse
    covolume: float
    boundary_area: float
    radius: float
    e2r_covolume: float
    lower: float
    upper: float
    aspect: float = Field(..., description="Reduced side ratio of the boundary torus")
    length_defect: Optional[float] = Field(
        None, description="R - log(1/l)/2, smooth fillings only"
    )
    within_slack: Optional[bool] = None

    CSV_HEADER: ClassVar[tuple[str, ...]] = (
        "covolume",
        "boundary_area",
        "radius",
        "e2r_covolume",
        "lower",
        "upper",
        "aspect",
        "length_defect",
    )

    @classmethod
    def from_domain(
        cls,
        shape: TubeShapeClass,
        geometry: TubeGeometry,
        lower: float,
        upper: float,
        aspect: float,
        length_defect: Optional[float] = None,
        slack: Optional[float] = None,
    ) -> "RadiusResponse":
        within = None
        if length_defect is not None and slack is not None:
            within = abs(length_defect) <= slack
        return cls(
            shape=ShapeResponse.from_domain(shape),
            covolume=geometry.base_covolume,
            boundary_area=geometry.boundary_area,
            radius=geometry.radius,
            e2r_covolume=geometry.e2r_covolume,
            lower=lower,
            upper=upper,
            aspect=aspect,
            length_defect=length_defect,
            within_slack=within,
        )

    def csv_rows(self) -> list[list]:
        return [
            [
                self.covolume,
                self.boundary_area,
                self.radius,
                self.e2r_covolume,
                self.lower,
                self.upper,
                self.aspect,
                self.length_defect,
            ]
        ]
