"""Options shared by the commands and their conversion to domain inputs."""

from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Optional

import typer

from ..core.config.app_config import AppConfig
from ..core.exceptions import BadConfig
from ..domain.lattice import TubeShapeClass, classify, solve_tube_radius
from ..domain.value_objects import BoundarySpec, LatticeBasis, TubeGeometry
from ..utils.serialization import FORMATS
from .dtos.lattice_dtos import ConeInput, LatticeInput

TUBE_FLAGS = "--cone/--basis/--lattice"


def parse_window(text: Optional[str]) -> Optional[tuple[float, float]]:
    if text is None:
        return None
    parts = text.split(",")
    try:
        a, b = (float(part) for part in parts)
    except ValueError:
        raise typer.BadParameter("expected two comma-separated numbers a,b") from None
    return a, b


def parse_right_bc(text: str) -> BoundarySpec:
    try:
        return BoundarySpec.parse_right(text)
    except BadConfig as e:
        raise typer.BadParameter(e.message) from e


def check_positive(value: Optional[float]) -> Optional[float]:
    if value is not None and not value > 0:
        raise typer.BadParameter("must be positive")
    return value


def check_out(path: Optional[Path]) -> Optional[Path]:
    if path is not None and path.suffix.lower() not in FORMATS:
        raise typer.BadParameter("output file must end in .json or .csv")
    return path


Cone = Annotated[Optional[str], typer.Option("--cone", help="Cone tube 'alpha,twist,length'")]
Basis = Annotated[Optional[str], typer.Option("--basis", help="Lattice basis 'a,b,c,d'")]
LatticeFile = Annotated[
    Optional[Path],
    typer.Option("--lattice", exists=True, dir_okay=False, help="Lattice JSON file"),
]
Radius = Annotated[
    Optional[float],
    typer.Option("--radius", callback=check_positive, help="Tube radius; overrides the area convention"),
]
BoundaryArea = Annotated[
    Optional[float],
    typer.Option("--boundary-area", callback=check_positive, help="Area of the boundary torus"),
]
Jobs = Annotated[Optional[int], typer.Option("--jobs", min=1, help="Worker cap")]
RightBc = Annotated[
    str,
    typer.Option("--right-bc", help="dirichlet, natural or robin:<kappa>"),
]
Out = Annotated[
    Optional[Path],
    typer.Option("--out", callback=check_out, help="Output file, .json or .csv"),
]


@dataclass(frozen=True)
class TubeInput:
    """The tube a command runs on."""

    basis: LatticeBasis
    geometry: TubeGeometry
    shape: TubeShapeClass


def read_lattice(cone: Optional[str], basis: Optional[str], lattice: Optional[Path]) -> LatticeInput:
    given = [flag for flag, value in zip(("--cone", "--basis", "--lattice"), (cone, basis, lattice)) if value]
    if len(given) != 1:
        raise typer.BadParameter("give exactly one of them", param_hint=TUBE_FLAGS)
    try:
        if cone is not None:
            return LatticeInput(cone=ConeInput.parse(cone))
        if basis is not None:
            return LatticeInput.parse_basis(basis)
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint=given[0]) from e
    return LatticeInput.model_validate_json(lattice.read_text(encoding="utf-8"))


def resolve_tube(
    config: AppConfig,
    cone: Optional[str],
    basis: Optional[str],
    lattice: Optional[Path],
    radius: Optional[float],
) -> TubeInput:
    """Lattice, geometry and classification for the tube options of a command."""
    lattice_basis = read_lattice(cone, basis, lattice).to_domain()
    if radius is not None:
        geometry = TubeGeometry.from_radius(lattice_basis.covolume(), radius)
    else:
        geometry = solve_tube_radius(lattice_basis, config.boundary_area)
    lattice_config = config.lattice
    shape = classify(lattice_basis, lattice_config.z_tolerance, lattice_config.coefficient_bound)
    return TubeInput(lattice_basis, geometry, shape)
