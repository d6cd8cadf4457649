from typing import Annotated, Optional

import typer

from ..utils.serialization import write_report
from .dependencies import configure, get_tube_spectrum_service
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
    parse_window,
    resolve_tube,
)


def spectrum(
    window: Annotated[str, typer.Option("--window", help="Closed window 'a,b'")],
    cone: Cone = None,
    basis: Basis = None,
    lattice: LatticeFile = None,
    radius: Radius = None,
    boundary_area: BoundaryArea = None,
    jobs: Jobs = None,
    right_bc: RightBc = "dirichlet",
    truncation_bound: Annotated[
        Optional[float], typer.Option("--truncation-bound", help="Mode gap cut-off, at least b")
    ] = None,
    out: Out = None,
):
    """Eigenvalues of the tube in a window, by mode and level."""
    bounds = parse_window(window)
    bc = parse_right_bc(right_bc)
    config = configure(jobs=jobs, boundary_area=boundary_area)
    tube = resolve_tube(config, cone, basis, lattice, radius)

    result = get_tube_spectrum_service().assemble_spectrum(
        tube.basis, tube.geometry, bc, bounds, truncation_bound=truncation_bound
    )
    write_report(ReportMapper.spectrum(result), out)


def register(app: typer.Typer) -> None:
    app.command("spectrum")(spectrum)
