from typing import Annotated, Optional

import typer

from ..domain.grid import GridSpec, InnerBoundary, MassScheme
from ..utils.serialization import write_report
from .dependencies import configure, get_grid_oracle
from .dtos.mappers import ReportMapper
from .options import (
    Basis,
    BoundaryArea,
    Cone,
    Jobs,
    LatticeFile,
    Out,
    Radius,
    RightBc,
    parse_right_bc,
    resolve_tube,
)


def oracle_compare(
    k: Annotated[int, typer.Option("--k", min=1, help="Number of lowest eigenvalues")],
    refine: Annotated[bool, typer.Option("--refine", help="Repeat on a uniformly refined grid")] = False,
    r_cells: Annotated[Optional[int], typer.Option("--r-cells", min=2, help="Radial cells")] = None,
    n1: Annotated[Optional[int], typer.Option("--n1", min=1, help="Nodes along b1")] = None,
    n2: Annotated[Optional[int], typer.Option("--n2", min=1, help="Nodes along b2")] = None,
    mass_scheme: Annotated[
        Optional[MassScheme], typer.Option("--mass-scheme", help="Mass matrix scheme")
    ] = None,
    cone: Cone = None,
    basis: Basis = None,
    lattice: LatticeFile = None,
    radius: Radius = None,
    boundary_area: BoundaryArea = None,
    jobs: Jobs = None,
    right_bc: RightBc = "dirichlet",
    out: Out = None,
):
    """Lowest k tube eigenvalues from the mode decomposition against the 3D grid oracle."""
    bc = parse_right_bc(right_bc)
    config = configure(jobs=jobs, boundary_area=boundary_area)
    tube = resolve_tube(config, cone, basis, lattice, radius)

    settings = config.oracle
    spec = GridSpec(
        r_cells=r_cells or settings.r_nodes,
        grading=settings.grading,
        n1=n1,
        n2=n2,
        inner_bc=InnerBoundary(settings.inner_bc),
        mass_scheme=mass_scheme or MassScheme(settings.mass_scheme),
    )
    comparison = get_grid_oracle().oracle_compare(tube.basis, tube.geometry, k, bc, refine, spec)
    write_report(ReportMapper.comparison(comparison), out)


def register(app: typer.Typer) -> None:
    app.command("oracle-compare")(oracle_compare)
