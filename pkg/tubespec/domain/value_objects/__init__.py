"""Value objects for the domain layer.
Value objects are immutable objects that describe lattices, tubes and boundary conditions.
"""

from .boundary import BoundarySpec, LeftCondition, RightCondition
from .lattice_basis import DualMode, LatticeBasis
from .tube_geometry import TubeGeometry

__all__ = [
    "BoundarySpec",
    "DualMode",
    "LatticeBasis",
    "LeftCondition",
    "RightCondition",
    "TubeGeometry",
]
