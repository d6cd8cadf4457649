"""Radial eigenvalue solver implementation.

Each request is solved on a mesh and its bisection; the two discrete
spectra are combined by Richardson extrapolation. Singular mode potentials
with the Friedrichs condition are solved along the nested ladder
eps_j = eps0 * 2^-j until successive radii agree to the tolerance.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.config.app_config import SolverConfig, get_config
from ..core.exceptions import (
    BadConfig,
    NoConvergence,
    NonPositiveRadius,
    ValidationError,
    ZeroFunction,
)
from ..core.logging import get_logger
from ..domain.potentials import RadialPotential
from ..domain.spectra import EigenList, MeshDescriptor
from ..domain.value_objects import BoundarySpec, LeftCondition
from ..utils.extrapolation import richardson
from .interfaces.sturm_solver import ISturmSolver
from .radial_discretization import (
    InnerElement,
    RadialMesh,
    RadialPencil,
    assemble_pencil,
    build_mesh,
    regular_mesh,
)

BOUNDARY_ZERO_RTOL = 1e-8


@dataclass(frozen=True)
class _Step:
    """Extrapolated eigenvalues on one mesh pair."""

    indices: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    mesh: RadialMesh
    pencil: RadialPencil
    profiles: np.ndarray


class SturmSolver(ISturmSolver):
    """Half-line solver on graded meshes with Sturm-count window selection."""

    def __init__(self, config: Optional[SolverConfig] = None):
        self._config = config or get_config().solver
        self._logger = get_logger(__name__)

    def solve(
        self,
        potential: RadialPotential,
        radius: float,
        bc: BoundarySpec,
        window: Optional[tuple[float, float]] = None,
        count: Optional[int] = None,
        config: Optional[SolverConfig] = None,
    ) -> EigenList:
        cfg = config or self._config
        self._check_request(radius, bc, window, count, cfg)
        details = {"radius": radius, "left": bc.left.value, "right": bc.right_label}
        with self._logger.log_computation("radial_solve", details) as outcome:
            if self._uses_ladder(potential, bc):
                step, change, steps = self._ladder(potential, radius, bc, window, count, cfg)
            else:
                mesh = self._single_mesh(potential, radius, bc, cfg)
                step = self._extrapolated(potential, mesh, bc, window, count, cfg)
                change, steps = np.zeros_like(step.values), 0
            outcome.update({"eigenvalues": int(step.values.size), "ladder_steps": steps})
        return self._eigen_list(potential, step, step.errors + change, steps)

    def count_window(
        self,
        potential: RadialPotential,
        radius: float,
        bc: BoundarySpec,
        window: tuple[float, float],
        config: Optional[SolverConfig] = None,
    ) -> int:
        cfg = config or self._config
        self._check_request(radius, bc, window, None, cfg)
        if not self._uses_ladder(potential, bc):
            mesh = self._single_mesh(potential, radius, bc, cfg).bisected()
            pencil = assemble_pencil(potential, mesh, bc, cfg.quadrature_order)
            lo, hi = self._window_indices(pencil, window, cfg)
            return hi - lo + 1

        eps0 = cfg.first_epsilon(radius)
        previous: Optional[int] = None
        for step in range(cfg.max_refinements + 1):
            mesh = build_mesh(
                radius, cfg.n, cfg.grading, eps0 * 0.5**step, InnerElement.PROFILE, eps0
            ).bisected()
            pencil = assemble_pencil(potential, mesh, bc, cfg.quadrature_order)
            lo, hi = self._window_indices(pencil, window, cfg)
            current = hi - lo + 1
            if previous is not None and current == previous:
                return current
            previous = current
        raise NoConvergence("window count", steps=cfg.max_refinements)

    def rayleigh_quotient(
        self,
        nodes: np.ndarray,
        samples: np.ndarray,
        potential: RadialPotential,
        bc: Optional[BoundarySpec] = None,
        config: Optional[SolverConfig] = None,
    ) -> float:
        cfg = config or self._config
        bc = bc or BoundarySpec.dirichlet()
        r = np.asarray(nodes, dtype=float)
        u = np.asarray(samples, dtype=float)
        if r.ndim != 1 or r.shape != u.shape or r.size < 3:
            raise ValidationError(
                "Nodes and samples must be aligned 1D arrays", field="samples", value=u.shape
            )
        if np.any(np.diff(r) <= 0):
            raise ValidationError("Nodes must be strictly increasing", field="nodes")
        if r[0] == 0.0:
            r, u = r[1:], u[1:]
        if r[0] <= 0:
            raise NonPositiveRadius(float(r[0]))
        if not np.any(u):
            raise ZeroFunction()

        inner = InnerElement.PROFILE
        if bc.left is LeftCondition.DIRICHLET_AT:
            inner = InnerElement.DIRICHLET
            keep = r >= bc.epsilon * (1.0 - BOUNDARY_ZERO_RTOL)
            r, u = r[keep], u[keep]
        mesh = RadialMesh(nodes=r, inner=inner, n=r.size - 1, grading=1.0)
        pencil = assemble_pencil(potential, mesh, bc, cfg.quadrature_order)
        f = u / pencil.gauge
        scale = np.max(np.abs(f))
        inactive = np.flatnonzero(~pencil.active)
        if np.any(np.abs(f[inactive]) > BOUNDARY_ZERO_RTOL * scale):
            raise ValidationError(
                "Function must vanish at Dirichlet endpoints",
                field="samples",
                validation_rule="u = 0 at Dirichlet endpoints",
            )
        return pencil.rayleigh(f)

    def discrete_eigenvalues(
        self,
        potential: RadialPotential,
        radius: float,
        bc: BoundarySpec,
        count: int,
        config: Optional[SolverConfig] = None,
    ) -> EigenList:
        cfg = config or self._config
        self._check_request(radius, bc, None, count, cfg)
        mesh = self._single_mesh(potential, radius, bc, cfg)
        pencil = assemble_pencil(potential, mesh, bc, cfg.quadrature_order)
        values, profiles = pencil.eigenpairs(0, count - 1)
        step = _Step(
            indices=np.arange(count),
            values=values,
            errors=np.zeros_like(values),
            mesh=mesh,
            pencil=pencil,
            profiles=profiles,
        )
        return self._eigen_list(potential, step, step.errors, 0, extrapolation="none")

    def _check_request(
        self,
        radius: float,
        bc: BoundarySpec,
        window: Optional[tuple[float, float]],
        count: Optional[int],
        cfg: SolverConfig,
    ) -> None:
        if not radius > 0:
            raise NonPositiveRadius(radius)
        if (window is None) == (count is None):
            raise BadConfig("Give exactly one of window or count", field="window", value=window)
        if window is not None:
            a, b = window
            if not (np.isfinite(a) and np.isfinite(b)):
                raise BadConfig("Window must be bounded", field="window", value=window)
            if a > b:
                raise BadConfig("Window must satisfy a <= b", field="window", value=window)
        if count is not None and count < 1:
            raise BadConfig("count must be at least 1", field="count", value=count)
        if bc.left is LeftCondition.DIRICHLET_AT and not bc.epsilon < radius:
            raise BadConfig("Cut radius must be below R", field="epsilon", value=bc.epsilon)
        if cfg.first_epsilon(radius) >= radius / 4.0:
            raise BadConfig(
                "First truncation radius must be below R/4",
                field="eps0",
                value=cfg.first_epsilon(radius),
            )

    @staticmethod
    def _uses_ladder(potential: RadialPotential, bc: BoundarySpec) -> bool:
        return potential.is_singular and bc.left is LeftCondition.FRIEDRICHS

    @staticmethod
    def _single_mesh(
        potential: RadialPotential, radius: float, bc: BoundarySpec, cfg: SolverConfig
    ) -> RadialMesh:
        eps0 = cfg.first_epsilon(radius)
        if bc.left is LeftCondition.DIRICHLET_AT:
            return build_mesh(radius, cfg.n, cfg.grading, bc.epsilon, InnerElement.DIRICHLET, eps0)
        if potential.is_singular:
            return build_mesh(radius, cfg.n, cfg.grading, eps0, InnerElement.PROFILE)
        return regular_mesh(radius, cfg.n, cfg.grading)

    def _ladder(
        self,
        potential: RadialPotential,
        radius: float,
        bc: BoundarySpec,
        window: Optional[tuple[float, float]],
        count: Optional[int],
        cfg: SolverConfig,
    ) -> tuple[_Step, np.ndarray, int]:
        eps0 = cfg.first_epsilon(radius)
        previous: Optional[_Step] = None
        last_change: Optional[float] = None
        for step in range(cfg.max_refinements + 1):
            epsilon = eps0 * 0.5**step
            mesh = build_mesh(radius, cfg.n, cfg.grading, epsilon, InnerElement.PROFILE, eps0)
            current = self._extrapolated(potential, mesh, bc, window, count, cfg)
            if previous is not None and np.array_equal(current.indices, previous.indices):
                change = np.abs(current.values - previous.values)
                scale = np.maximum(1.0, np.abs(current.values) / 10.0)
                last_change = float(change.max()) if change.size else 0.0
                self._logger.debug(
                    "Epsilon step",
                    {"epsilon": epsilon, "step": step, "max_change": last_change},
                )
                if np.all(change < cfg.tol_eig * scale):
                    return current, change, step
            previous = current
        raise NoConvergence("epsilon ladder", last_change=last_change, steps=cfg.max_refinements)

    def _extrapolated(
        self,
        potential: RadialPotential,
        mesh: RadialMesh,
        bc: BoundarySpec,
        window: Optional[tuple[float, float]],
        count: Optional[int],
        cfg: SolverConfig,
    ) -> _Step:
        fine_mesh = mesh.bisected()
        coarse = assemble_pencil(potential, mesh, bc, cfg.quadrature_order)
        fine = assemble_pencil(potential, fine_mesh, bc, cfg.quadrature_order)
        if window is not None:
            lo, hi = self._window_indices(fine, window, cfg)
        else:
            lo, hi = 0, count - 1
        fine_values, profiles = fine.eigenpairs(lo, hi)
        coarse_values, _ = coarse.eigenpairs(lo, hi)
        values, errors = richardson(coarse_values, fine_values)
        indices = np.arange(lo, hi + 1)
        if window is not None:
            keep = self._inside(values, errors, window, cfg)
            indices, values, errors = indices[keep], values[keep], errors[keep]
            profiles = profiles[keep]
        return _Step(
            indices=indices,
            values=values,
            errors=errors,
            mesh=fine_mesh,
            pencil=fine,
            profiles=profiles,
        )

    @staticmethod
    def _window_indices(
        pencil: RadialPencil, window: tuple[float, float], cfg: SolverConfig
    ) -> tuple[int, int]:
        """Index range of the discrete eigenvalues near the window, widened by the edge slack.

        A zero eigenvalue comes out of the tridiagonal solve as roundoff of
        either sign, so a strict count at a = 0 would drop it.
        """
        a, b = window
        below = pencil.count_below([a - cfg.edge_slack(a), b + cfg.edge_slack(b)])
        return int(below[0]), int(below[1]) - 1

    @staticmethod
    def _inside(
        values: np.ndarray, errors: np.ndarray, window: tuple[float, float], cfg: SolverConfig
    ) -> np.ndarray:
        a, b = window
        low = a - np.maximum(errors, cfg.edge_slack(a))
        high = b + np.maximum(errors, cfg.edge_slack(b))
        return (values >= low) & (values <= high)

    def _eigen_list(
        self,
        potential: RadialPotential,
        step: _Step,
        errors: np.ndarray,
        ladder_steps: int,
        extrapolation: str = "richardson",
    ) -> EigenList:
        mesh = step.mesh
        descriptor = MeshDescriptor(
            n=mesh.n,
            grading=mesh.grading,
            nodes=mesh.size,
            inner=mesh.inner.value,
            epsilon=mesh.epsilon,
            ladder_steps=ladder_steps,
            extrapolation=extrapolation,
        )
        epsilon_used = mesh.epsilon if potential.is_singular else None
        inner_exponent = (
            potential.profile_exponent if mesh.inner is InnerElement.PROFILE else 0.0
        )
        return EigenList(
            values=step.values,
            error_estimates=errors,
            mesh_descriptor=descriptor,
            epsilon_used=epsilon_used,
            indices=step.indices,
            nodes=mesh.nodes,
            profiles=step.profiles,
            gauge=step.pencil.gauge,
            inner_exponent=inner_exponent,
        )
