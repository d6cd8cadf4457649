"""Boundary condition specification for radial problems."""

from dataclasses import dataclass
from enum import Enum
from math import isfinite
from typing import Optional

from ...core.exceptions import BadConfig


class LeftCondition(str, Enum):
    """Condition at the singular endpoint r = 0."""

    FRIEDRICHS = "friedrichs"
    DIRICHLET_AT = "dirichlet_at"


class RightCondition(str, Enum):
    """Condition at the outer boundary r = R."""

    DIRICHLET = "dirichlet"
    ROBIN = "robin"
    NATURAL = "natural"


@dataclass(frozen=True)
class BoundarySpec:
    """Boundary conditions of a half-line problem on (0, R].

    NATURAL is the free condition of the quadratic form. For a mode
    potential it is the Robin condition u'(R) = coth(2R) u(R); for a
    regular potential it is u'(R) = 0.
    """

    left: LeftCondition = LeftCondition.FRIEDRICHS
    right: RightCondition = RightCondition.DIRICHLET
    epsilon: Optional[float] = None
    kappa: Optional[float] = None

    def __post_init__(self):
        if self.left is LeftCondition.DIRICHLET_AT:
            if self.epsilon is None or not self.epsilon > 0:
                raise BadConfig("DirichletAt needs epsilon > 0", field="epsilon", value=self.epsilon)
        elif self.epsilon is not None:
            raise BadConfig("epsilon is only used with DirichletAt", field="epsilon", value=self.epsilon)
        if self.right is RightCondition.ROBIN:
            if self.kappa is None or not isfinite(self.kappa):
                raise BadConfig("Robin needs a finite coefficient", field="kappa", value=self.kappa)
        elif self.kappa is not None:
            raise BadConfig("kappa is only used with Robin", field="kappa", value=self.kappa)

    @classmethod
    def dirichlet(cls) -> "BoundarySpec":
        return cls(LeftCondition.FRIEDRICHS, RightCondition.DIRICHLET)

    @classmethod
    def natural(cls) -> "BoundarySpec":
        return cls(LeftCondition.FRIEDRICHS, RightCondition.NATURAL)

    @classmethod
    def robin(cls, kappa: float) -> "BoundarySpec":
        return cls(LeftCondition.FRIEDRICHS, RightCondition.ROBIN, kappa=kappa)

    @classmethod
    def parse_right(cls, text: str) -> "BoundarySpec":
        """Parse 'dirichlet', 'natural' or 'robin:<kappa>' into a Friedrichs spec."""
        label = text.strip().lower()
        if label == "dirichlet":
            return cls.dirichlet()
        if label == "natural":
            return cls.natural()
        if label.startswith("robin:"):
            try:
                kappa = float(label.split(":", 1)[1])
            except ValueError as e:
                raise BadConfig("Robin coefficient must be a number", field="right_bc", value=text) from e
            return cls.robin(kappa)
        raise BadConfig(
            "Right boundary must be dirichlet, natural or robin:<kappa>",
            field="right_bc",
            value=text,
        )

    def truncated_at(self, epsilon: float) -> "BoundarySpec":
        """Same right condition with a Dirichlet cut at epsilon."""
        return BoundarySpec(LeftCondition.DIRICHLET_AT, self.right, epsilon=epsilon, kappa=self.kappa)

    def with_right(self, right: "BoundarySpec") -> "BoundarySpec":
        return BoundarySpec(self.left, right.right, epsilon=self.epsilon, kappa=right.kappa)

    @property
    def right_label(self) -> str:
        if self.right is RightCondition.ROBIN:
            return f"robin:{self.kappa!r}"
        return self.right.value
