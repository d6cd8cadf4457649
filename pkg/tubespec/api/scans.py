"""Family scans and the slab localization analysis."""

from math import sqrt
from pathlib import Path
from typing import Annotated, Optional

import typer

from ..domain.potentials import ModePotential
from ..domain.tube_function import TubeFunction
from ..domain.value_objects import BoundarySpec, DualMode
from ..utils.serialization import write_report
from .dependencies import (
    configure,
    get_deformation_scan_service,
    get_sturm_solver,
    get_tube_spectrum_service,
)
from .dtos.family_dtos import FamilySpecRequest
from .dtos.mappers import ReportMapper
from .options import (
    Basis,
    BoundaryArea,
    Cone,
    Jobs,
    LatticeFile,
    Out,
    Radius,
    parse_right_bc,
    resolve_tube,
)


def cluster_scan(
    family: Annotated[
        Path, typer.Option("--family", exists=True, dir_okay=False, help="FamilySpec JSON file")
    ],
    x: Annotated[float, typer.Option("--x", min=0.0, help="Window N[1, 1 + x^2]")],
    right_bc: Annotated[
        str, typer.Option("--right-bc", help="dirichlet, natural or robin:<kappa>")
    ] = "natural",
    small_below: Annotated[
        Optional[float],
        typer.Option("--small-below", help="Also list eigenvalues below this bound in (0, 1)"),
    ] = None,
    boundary_area: BoundaryArea = None,
    jobs: Jobs = None,
    out: Out = None,
):
    """Counts in [1, 1 + x^2] along a family with fits against R and log(1/covol)."""
    bc = parse_right_bc(right_bc)
    configure(jobs=jobs, boundary_area=boundary_area)
    request = FamilySpecRequest.model_validate_json(family.read_text(encoding="utf-8"))
    spec = request.to_domain(boundary_area)

    report = get_deformation_scan_service().run_clustering(spec, x, bc, small_below)
    write_report(ReportMapper.counting(report), out)


def slab_analyze(
    rho: Annotated[float, typer.Option("--rho", min=0.0, help="Start of the search range")],
    c: Annotated[float, typer.Option("--c", help="Search range length, above 4")],
    spectral_bound: Annotated[
        float, typer.Option("--spectral-bound", help="Spectral bound in (0, 1)")
    ],
    cone: Cone = None,
    basis: Basis = None,
    lattice: LatticeFile = None,
    radius: Radius = None,
    boundary_area: BoundaryArea = None,
    out: Out = None,
):
    """Slab and localization bounds for the lowest zero-mode eigenfunction with a natural end."""
    config = configure(boundary_area=boundary_area)
    tube = resolve_tube(config, cone, basis, lattice, radius)

    mode = DualMode.zero()
    eigen = get_sturm_solver().solve(
        ModePotential(mode, tube.geometry.radius),
        tube.geometry.radius,
        BoundarySpec.natural(),
        count=1,
    )
    f = TubeFunction.from_eigenpair(mode, eigen, 0)
    f = f.scaled(1.0 / sqrt(f.norm_squared()))
    eigenvalue = float(eigen.values[0])

    report = get_tube_spectrum_service().slab_localization(f, rho, c, spectral_bound, eigenvalue)
    write_report(ReportMapper.slab(report, eigenvalue), out)


def register(app: typer.Typer) -> None:
    app.command("cluster-scan")(cluster_scan)
    app.command("slab-analyze")(slab_analyze)
