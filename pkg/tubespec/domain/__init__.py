"""Domain layer containing lattice geometry, potentials and spectral models.
This layer holds the mathematics of the tube without service dependencies.
"""

from .family import ConeFamily, FamilyMember, FamilySpec, IrrationalFamily, SmoothFilling
from .lattice import ConeTube, IrrationalTube, ModeLevel
from .potentials import ConstantPotential, ModePotential, RegularPotential
from .tube_function import TubeFunction
from .value_objects import BoundarySpec, DualMode, LatticeBasis, TubeGeometry

__all__ = [
    "BoundarySpec",
    "ConeFamily",
    "ConeTube",
    "ConstantPotential",
    "DualMode",
    "FamilyMember",
    "FamilySpec",
    "IrrationalFamily",
    "IrrationalTube",
    "LatticeBasis",
    "ModeLevel",
    "ModePotential",
    "RegularPotential",
    "SmoothFilling",
    "TubeFunction",
    "TubeGeometry",
]
