"""Tube spectrum service implementation.

The Friedrichs Laplacian of a tube splits into the half-line operators
P_{V_lambda} over the dual lattice. Modes whose gap at R exceeds the window
top cannot contribute, since P_{V_lambda} >= P_{V_0} + gap and P_{V_0} >= 0.
A Robin coefficient above coth(2R) breaks the last bound; the cut is then
raised by the depth of the zero-mode ground state.
"""

from concurrent.futures import ThreadPoolExecutor
from math import pi
from typing import Optional, Sequence

import numpy as np

from ..core.config.app_config import AppConfig, SolverConfig, get_config
from ..core.exceptions import (
    BadConfig,
    NotNormalized,
    TubeTooShort,
    ValidationError,
    WindowNotCovered,
    ZeroFunction,
)
from ..core.logging import get_logger
from ..domain.lattice import ModeLevel, enumerate_modes
from ..domain.potentials import ConstantPotential, ModePotential
from ..domain.spectra import (
    CountingReport,
    CountingRow,
    EigenList,
    GreensStudy,
    LinearFit,
    SlabReport,
    SpectrumEntry,
    TubeSpectrum,
    WindowCount,
)
from ..domain.tube_function import TubeFunction
from ..domain.value_objects import BoundarySpec, DualMode, LatticeBasis, TubeGeometry
from ..utils.extrapolation import linear_fit
from .interfaces.sturm_solver import ISturmSolver
from .interfaces.tube_spectrum_service import ITubeSpectrumService
from .radial_discretization import robin_coefficient

NORMALIZATION_RTOL = 1e-6
SUPPORT_RTOL = 1e-10
SEARCH_SLACK = 1.05


def _canonical(mode: DualMode) -> tuple[int, int]:
    """Representative of {lambda, -lambda}; both share one radial operator."""
    m, n = mode.index
    return (m, n) if (m, n) >= (-m, -n) else (-m, -n)


def _fit(radii: Sequence[float], counts: Sequence[float], reference_slope: float) -> LinearFit:
    slope, intercept = linear_fit(radii, counts)
    residuals = tuple(float(c - reference_slope * r) for r, c in zip(radii, counts))
    return LinearFit(slope, intercept, reference_slope, residuals)


class TubeSpectrumService(ITubeSpectrumService):
    """Assembles tube spectra and evaluates the tube-side inequalities."""

    def __init__(self, solver: ISturmSolver, config: Optional[AppConfig] = None):
        self._solver = solver
        self._config = config or get_config()
        self._logger = get_logger(__name__)

    def assemble_spectrum(
        self,
        basis: LatticeBasis,
        geometry: TubeGeometry,
        right_bc: BoundarySpec,
        window: tuple[float, float],
        config: Optional[SolverConfig] = None,
        truncation_bound: Optional[float] = None,
    ) -> TubeSpectrum:
        a, b = window
        if not (np.isfinite(a) and np.isfinite(b)) or a > b:
            raise BadConfig("Window must be bounded with a <= b", field="window", value=window)
        bound = b if truncation_bound is None else truncation_bound
        if bound < b:
            raise BadConfig(
                "Truncation bound must cover the window top", field="truncation_bound", value=bound
            )

        radius = geometry.radius
        bound += self._robin_shift(radius, right_bc, config)
        levels = enumerate_modes(basis, radius, max(bound, 0.0), self._config.mode_cap)
        groups: dict[tuple[int, int], list[ModeLevel]] = {}
        for level in levels:
            groups.setdefault(_canonical(level.mode), []).append(level)
        representatives = [members[0].mode for members in groups.values()]

        details = {"radius": radius, "modes": len(levels), "solves": len(representatives)}
        with self._logger.log_computation("assemble_spectrum", details) as outcome:

            def solve(mode: DualMode) -> EigenList:
                return self._solver.solve(
                    ModePotential(mode, radius), radius, right_bc, window=(a, b), config=config
                )

            workers = max(1, min(self._config.jobs, len(representatives)))
            if workers == 1:
                results = [solve(mode) for mode in representatives]
            else:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    results = list(pool.map(solve, representatives))

            entries = [
                SpectrumEntry(float(value), level.mode, float(error), int(index))
                for members, eigen_list in zip(groups.values(), results)
                for level in members
                for value, error, index in zip(
                    eigen_list.values, eigen_list.error_estimates, eigen_list.indices
                )
            ]
            entries.sort(key=lambda entry: (entry.value, entry.mode.index))
            outcome["entries"] = len(entries)

        return TubeSpectrum(
            basis=basis,
            geometry=geometry,
            right_bc=right_bc,
            window=(float(a), float(b)),
            entries=tuple(entries),
            truncation_bound=float(bound),
            modes_solved=len(representatives),
        )

    def _robin_shift(
        self, radius: float, right_bc: BoundarySpec, config: Optional[SolverConfig]
    ) -> float:
        """How far below zero P_{V_0} reaches under the right condition.

        For kappa > coth(2R) the boundary term is negative and the zero mode
        acquires a negative ground state; P_{V_lambda} >= P_{V_0} + gap then
        only bounds a mode's spectrum from below by gap + that ground state.
        """
        zero = ModePotential(DualMode.zero(), radius)
        if robin_coefficient(zero, radius, right_bc) >= 0:
            return 0.0
        ground = self._solver.solve(zero, radius, right_bc, count=1, config=config)
        floor = float(ground.values[0] - ground.error_estimates[0])
        self._logger.debug("Robin floor", {"radius": radius, "floor": floor})
        return max(0.0, -floor)

    def counting_function(self, spectrum: TubeSpectrum, a: float, b: float) -> WindowCount:
        lo, hi = spectrum.window
        if a < lo or b > hi or a > b:
            raise WindowNotCovered((a, b), spectrum.window)
        values = spectrum.values
        errors = spectrum.error_estimates
        solver = self._config.solver
        # roundoff margin only; a zero eigenvalue may come out as -1e-17
        low, high = a - solver.edge_slack(a), b + solver.edge_slack(b)
        strict = int(np.count_nonzero((values >= low) & (values <= high)))
        tolerant = int(np.count_nonzero((values + errors >= low) & (values - errors <= high)))
        return WindowCount(strict=strict, tolerant=tolerant)

    def clustering_scan(
        self,
        family: Sequence[tuple[LatticeBasis, TubeGeometry]],
        x: float,
        right_bc: BoundarySpec,
        config: Optional[SolverConfig] = None,
    ) -> CountingReport:
        if not x > 0:
            raise ValidationError("x must be positive", field="x", value=x)
        radii = [geometry.radius for _, geometry in family]
        if len(family) < 2 or np.any(np.diff(radii) <= 0):
            raise ValidationError(
                "Family must hold at least two members with increasing R", field="family"
            )
        window = (1.0, 1.0 + x * x)
        rows = []
        for basis, geometry in family:
            spectrum = self.assemble_spectrum(basis, geometry, right_bc, window, config)
            counts = self.counting_function(spectrum, *window)
            rows.append(
                CountingRow(
                    radius=geometry.radius,
                    covolume=basis.covolume(),
                    count=counts.strict,
                    tolerant_count=counts.tolerant,
                    reference=x * geometry.radius / pi,
                )
            )
        return self._report(window, x, right_bc.right_label, rows)

    def model_clustering_scan(
        self, radii: Sequence[float], x: float, config: Optional[SolverConfig] = None
    ) -> CountingReport:
        if not x > 0:
            raise ValidationError("x must be positive", field="x", value=x)
        window = (1.0, 1.0 + x * x)
        model = ConstantPotential(1.0)
        rows = []
        for radius in radii:
            count = self._solver.count_window(
                model, radius, BoundarySpec.dirichlet(), window, config=config
            )
            rows.append(CountingRow(radius, 0.0, count, count, x * radius / pi))
        return self._report(window, x, "dirichlet", rows)

    def _report(
        self, window: tuple[float, float], x: float, label: str, rows: list[CountingRow]
    ) -> CountingReport:
        radii = np.array([row.radius for row in rows])
        counts = np.array([row.count for row in rows], dtype=float)
        fit = _fit(radii, counts, x / pi)
        residuals = np.array(fit.residuals)
        trend, _ = linear_fit(radii, residuals)
        self._logger.info(
            "Clustering scan finished",
            {"members": len(rows), "slope": fit.slope, "reference": fit.reference_slope},
        )
        return CountingReport(
            window=window,
            x=x,
            right_bc=label,
            rows=tuple(rows),
            radius_fit=fit,
            residual_bound=float(np.max(np.abs(residuals))),
            residual_trend=trend,
        )

    def greens_residual(self, f: TubeFunction, eigenvalue: float, r_cut: float) -> float:
        return abs(self._greens_defect(f, eigenvalue, r_cut))

    @staticmethod
    def _greens_defect(f: TubeFunction, eigenvalue: float, r_cut: float) -> float:
        if not 0 < r_cut < f.radius:
            raise ValidationError("Cut radius must lie in (0, R)", field="r_cut", value=r_cut)
        mass, energy = f.integrals(0.0, r_cut)
        return energy - eigenvalue * mass - f.boundary_flux(r_cut)

    def greens_convergence(
        self,
        mode: DualMode,
        radius: float,
        right_bc: BoundarySpec,
        r_cut: float,
        levels: int = 4,
        index: int = 0,
        config: Optional[SolverConfig] = None,
    ) -> GreensStudy:
        if levels < 2:
            raise ValidationError(
                "A convergence study needs two levels", field="levels", value=levels
            )
        if not 0 < r_cut < radius:
            raise ValidationError("Cut radius must lie in (0, R)", field="r_cut", value=r_cut)
        base = config or self._config.solver
        potential = ModePotential(mode, radius)
        sizes, defects = [], []
        for level in range(levels):
            cfg = base.model_copy(update={"n": base.n * 2**level})
            eigen = self._solver.solve(potential, radius, right_bc, count=index + 1, config=cfg)
            f = TubeFunction.from_eigenpair(mode, eigen, index)
            f = f.scaled(1.0 / np.sqrt(f.norm_squared()))
            sizes.append(cfg.n)
            defects.append(self._greens_defect(f, float(eigen.values[index]), r_cut))
        # defects are O(h^2); one Richardson step on the last pair
        extrapolated = (4.0 * defects[-1] - defects[-2]) / 3.0
        study = GreensStudy(tuple(sizes), tuple(defects), extrapolated)
        self._logger.info(
            "Green convergence study",
            {"meshes": sizes, "ratios": list(study.ratios), "final": study.final_residual},
        )
        return study

    def poincare_check(self, h: TubeFunction) -> float:
        if not np.any(h.values):
            raise ZeroFunction()
        if not h.is_compactly_supported(SUPPORT_RTOL):
            raise ValidationError(
                "Function must vanish near both ends of the tube",
                field="h",
                validation_rule="compact support in (0, R)",
            )
        return h.rayleigh()

    def slab_localization(
        self,
        f: TubeFunction,
        rho: float,
        c: float,
        spectral_bound: float,
        eigenvalue: Optional[float] = None,
    ) -> SlabReport:
        if not 0 < spectral_bound < 1:
            raise ValidationError(
                "Spectral bound must lie in (0, 1)", field="spectral_bound", value=spectral_bound
            )
        if not c > 4:
            raise ValidationError("c must exceed 4", field="c", value=c)
        if rho < 0:
            raise ValidationError("rho must be non-negative", field="rho", value=rho)
        if f.radius < rho + c:
            raise TubeTooShort(f.radius, rho + c)
        norm_squared = f.norm_squared()
        if abs(norm_squared - 1.0) > NORMALIZATION_RTOL:
            raise NotNormalized(norm_squared)

        eta = 2.0 * (1.0 + spectral_bound) / (c - 4.0)
        lo, hi = rho + 2.0, rho + c
        candidates = f.nodes[(f.nodes >= lo) & (f.nodes <= hi)]
        candidates = np.unique(np.concatenate([[lo, hi], candidates]))
        slab = np.array([f.h1_mass(r - 1.0, r) for r in candidates])
        boundary = np.asarray(f.density(candidates))
        # first candidate meeting both bounds, else the one closest to them
        worst = np.maximum(slab, boundary)
        hits = np.flatnonzero(worst < SEARCH_SLACK * eta)
        k = int(hits[0]) if hits.size else int(np.argmin(worst))
        r = float(candidates[k])

        inner_mass, inner_energy = f.integrals(0.0, r)
        report = {
            "radius": r,
            "slab_mass": float(slab[k]),
            "boundary_mass": float(boundary[k]),
            "slab_bound": SEARCH_SLACK * eta,
            "boundary_bound": SEARCH_SLACK * eta,
            "inner_mass": inner_mass + inner_energy,
            "localization_bound": 40.0 / ((1.0 - spectral_bound) * (c - 4.0)),
        }
        if eigenvalue is not None:
            report.update(
                green_defect=abs(inner_energy - eigenvalue * inner_mass),
                green_bound=eta,
                green_error=inner_mass - inner_energy,
                green_error_bound=3.0 * float(slab[k]),
            )
        self._logger.debug("Slab search", {"radius": r, "candidates": int(candidates.size)})
        return SlabReport(**report)
