"""Tube geometry value object."""

from dataclasses import dataclass
from math import asinh, cosh, exp, sinh

from ...core.exceptions import ValidationError

AREA_TOLERANCE = 1e-10


@dataclass(frozen=True)
class TubeGeometry:
    """Radius of a singular tube together with its boundary torus area.

    The radius is pinned by the area of the boundary torus T^2_R:
    sinh(R) cosh(R) * base_covolume = boundary_area.
    """

    radius: float
    boundary_area: float
    base_covolume: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValidationError("Tube radius must be positive", field="radius", value=self.radius)
        if self.boundary_area <= 0 or self.base_covolume <= 0:
            raise ValidationError(
                "Boundary area and covolume must be positive",
                field="boundary_area",
                value=(self.boundary_area, self.base_covolume),
            )
        area = sinh(self.radius) * cosh(self.radius) * self.base_covolume
        if abs(area - self.boundary_area) > AREA_TOLERANCE * self.boundary_area:
            raise ValidationError(
                "Boundary area does not match radius and covolume",
                field="boundary_area",
                value=self.boundary_area,
                validation_rule="sinh(R)cosh(R)covol = area",
            )

    @classmethod
    def from_area(cls, base_covolume: float, boundary_area: float) -> "TubeGeometry":
        """Solve sinh(R) cosh(R) covol = area, i.e. R = asinh(2 area / covol) / 2."""
        if base_covolume <= 0 or boundary_area <= 0:
            raise ValidationError(
                "Boundary area and covolume must be positive",
                field="boundary_area",
                value=(boundary_area, base_covolume),
            )
        radius = 0.5 * asinh(2.0 * boundary_area / base_covolume)
        # recompute the area so the invariant holds to rounding
        area = sinh(radius) * cosh(radius) * base_covolume
        return cls(radius, area, base_covolume)

    @classmethod
    def from_radius(cls, base_covolume: float, radius: float) -> "TubeGeometry":
        """Fix the radius directly; the boundary area follows."""
        if radius <= 0:
            raise ValidationError("Tube radius must be positive", field="radius", value=radius)
        return cls(radius, sinh(radius) * cosh(radius) * base_covolume, base_covolume)

    @property
    def e2r_covolume(self) -> float:
        """e^{2R} * covolume, bounded above and below in terms of the area."""
        return exp(2.0 * self.radius) * self.base_covolume
