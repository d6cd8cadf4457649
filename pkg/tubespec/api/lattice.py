"""Commands on the lattice alone: mode classification and the tube radius."""

from typing import Annotated

import typer
from rich.console import Console
from rich.table import Table

from ..domain.lattice import boundary_torus_aspect, enumerate_modes
from ..utils.serialization import write_report
from .dependencies import configure
from .dtos.lattice_dtos import ModeTableResponse
from .dtos.mappers import ReportMapper
from .options import Basis, BoundaryArea, Cone, LatticeFile, Out, Radius, resolve_tube


def _render(table: ModeTableResponse) -> None:
    shape = table.shape
    title = f"{shape.kind} tube, R = {table.radius:.6g}, gap <= {table.energy_bound:.6g}"
    view = Table(title=title)
    for column in ModeTableResponse.CSV_HEADER:
        view.add_column(column, justify="left" if column == "endpoint" else "right")
    for mode in table.modes:
        view.add_row(
            str(mode.m),
            str(mode.n),
            f"{mode.lam1:.6g}",
            f"{mode.lam2:.6g}",
            f"{mode.gap:.6g}",
            f"{mode.c2:.6g}",
            f"{mode.nu:.6g}",
            mode.endpoint,
        )
    Console().print(view)


def classify_modes(
    energy_bound: Annotated[
        float, typer.Option("--energy-bound", min=0.0, help="Largest cross-section eigenvalue")
    ],
    cone: Cone = None,
    basis: Basis = None,
    lattice: LatticeFile = None,
    radius: Radius = None,
    boundary_area: BoundaryArea = None,
    out: Out = None,
):
    """Modes with gap below the bound, tagged LimitCircle or LimitPoint at r = 0."""
    config = configure(boundary_area=boundary_area)
    tube = resolve_tube(config, cone, basis, lattice, radius)
    levels = enumerate_modes(tube.basis, tube.geometry.radius, energy_bound, config.mode_cap)
    table = ReportMapper.mode_table(tube.shape, tube.geometry, levels, energy_bound)
    if out is None:
        _render(table)
    else:
        write_report(table, out)


def radius(
    cone: Cone = None,
    basis: Basis = None,
    lattice: LatticeFile = None,
    boundary_area: BoundaryArea = None,
    out: Out = None,
):
    """Tube radius from the boundary area, with e^{2R} covol and its bounds."""
    config = configure(boundary_area=boundary_area)
    tube = resolve_tube(config, cone, basis, lattice, None)
    aspect = boundary_torus_aspect(tube.basis, tube.geometry.radius)
    report = ReportMapper.radius(tube.shape, tube.geometry, aspect, config.lattice.radius_slack)
    write_report(report, out)


def register(app: typer.Typer) -> None:
    app.command("classify-modes")(classify_modes)
    app.command("radius")(radius)
