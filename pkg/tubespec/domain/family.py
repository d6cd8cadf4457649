"""One-parameter families of tube shapes degenerating towards the complete structure.

Families are given directly by lattice data; along a family the covolume
of the base torus strictly decreases, so the tube radius grows.
"""

from dataclasses import dataclass, field
from math import pi, sqrt
from typing import Literal, Optional, Union

from ..core.config.app_config import SolverConfig
from ..core.exceptions import BadFamily
from .lattice import ConeTube
from .value_objects import LatticeBasis, TubeGeometry

TWO_PI = 2.0 * pi
GOLDEN_TWIST = TWO_PI * (sqrt(5.0) - 1.0) / 2.0


def _positive(values: tuple[float, ...], name: str) -> tuple[float, ...]:
    values = tuple(float(v) for v in values)
    if not values:
        raise BadFamily(f"{name} must not be empty", field=name)
    if any(not v > 0 for v in values):
        raise BadFamily(f"{name} must be positive", field=name, value=values)
    return values


@dataclass(frozen=True)
class SmoothFilling:
    """Basis (2 pi, 0), (twist, l) for each core length l.

    The golden twist keeps the boundary torus of every member uniformly
    shaped; a zero twist makes it degenerate as l -> 0.
    """

    lengths: tuple[float, ...]
    twist: float = GOLDEN_TWIST
    kind: Literal["smooth_filling"] = "smooth_filling"

    def __post_init__(self):
        object.__setattr__(self, "lengths", _positive(self.lengths, "lengths"))

    def shapes(self) -> list[ConeTube]:
        return [ConeTube(TWO_PI, self.twist % TWO_PI, length) for length in self.lengths]


@dataclass(frozen=True)
class ConeFamily:
    """Cone angles with core lengths from the area law l = area / alpha or given explicitly."""

    alphas: tuple[float, ...]
    length_law: Literal["area", "explicit"] = "area"
    area: Optional[float] = None
    lengths: Optional[tuple[float, ...]] = None
    twist_fraction: float = 0.0
    kind: Literal["cone"] = "cone"

    def __post_init__(self):
        object.__setattr__(self, "alphas", _positive(self.alphas, "alphas"))
        if not 0 <= self.twist_fraction < 1:
            raise BadFamily(
                "twist_fraction must lie in [0, 1)", field="twist_fraction", value=self.twist_fraction
            )
        if self.length_law == "area":
            if self.area is None or not self.area > 0:
                raise BadFamily("The area law needs a positive area", field="area", value=self.area)
        else:
            if self.lengths is None:
                raise BadFamily("Explicit lengths are missing", field="lengths")
            lengths = _positive(self.lengths, "lengths")
            if len(lengths) != len(self.alphas):
                raise BadFamily(
                    "One length per cone angle is required",
                    field="lengths",
                    value=(len(lengths), len(self.alphas)),
                )
            object.__setattr__(self, "lengths", lengths)

    def shapes(self) -> list[ConeTube]:
        if self.length_law == "area":
            lengths = [self.area / alpha for alpha in self.alphas]
        else:
            lengths = list(self.lengths)
        return [
            ConeTube(alpha, self.twist_fraction * alpha, length)
            for alpha, length in zip(self.alphas, lengths)
        ]


@dataclass(frozen=True)
class IrrationalFamily:
    """A base basis scaled by shrink factors s decreasing to 0."""

    basis: LatticeBasis
    shrink: tuple[float, ...]
    kind: Literal["irrational"] = "irrational"

    def __post_init__(self):
        object.__setattr__(self, "shrink", _positive(self.shrink, "shrink"))

    def bases(self) -> list[LatticeBasis]:
        return [self.basis.scaled(s) for s in self.shrink]


FamilyShape = Union[SmoothFilling, ConeFamily, IrrationalFamily]


@dataclass(frozen=True)
class FamilySpec:
    """A family of tube shapes with the conventions shared by all members."""

    shape: FamilyShape
    boundary_area: float = 1.0
    solver: Optional[SolverConfig] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.boundary_area > 0:
            raise BadFamily(
                "boundary_area must be positive", field="boundary_area", value=self.boundary_area
            )

    @property
    def kind(self) -> str:
        return self.shape.kind


@dataclass(frozen=True)
class FamilyMember:
    """One generated member with its boundary-torus shape."""

    index: int
    basis: LatticeBasis
    geometry: TubeGeometry
    aspect: float
    shape: Optional[ConeTube] = None

    @property
    def covolume(self) -> float:
        return self.geometry.base_covolume

    @property
    def radius(self) -> float:
        return self.geometry.radius
