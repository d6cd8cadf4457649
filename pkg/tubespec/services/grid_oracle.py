"""3D grid oracle implementation.

Q1 elements in the lattice coordinates s times P1 elements in r discretize
the quadratic form

    int (|d_r f|^2 + |d_theta f|^2 / sinh^2 r + |d_z f|^2 / cosh^2 r) sinh r cosh r

and its mass. Natural conditions need no assembly; Dirichlet nodes are
dropped from the free set.
"""

from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import linalg, sparse
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, LinearOperator, eigsh, splu

from ..core.config.app_config import AppConfig, OracleConfig, get_config
from ..core.exceptions import (
    BadConfig,
    GridTooCoarse,
    IterationFailure,
    NoConvergence,
    NotQuasiIsometric,
    ValidationError,
)
from ..core.logging import get_logger
from ..domain.grid import CurvedGrid, GridProblem, GridSpec, InnerBoundary, MassScheme
from ..domain.lattice import boundary_metric, enumerate_modes, reduce_basis
from ..domain.spectra import (
    BracketReport,
    ComparisonRow,
    OracleComparison,
    SparseSpectralResult,
    SpectrumEntry,
)
from ..domain.value_objects import BoundarySpec, LatticeBasis, LeftCondition, RightCondition, TubeGeometry
from .interfaces.grid_oracle import ConformalFactor, IGridOracle
from .interfaces.tube_spectrum_service import ITubeSpectrumService

QUADRATURE_ORDER = 4
SHIFT = -1.0
RATIO_SLACK = 1e-12
ZERO_FLOOR = 1e-10
INITIAL_WINDOW_TOP = 8.0
MAX_WINDOW_DOUBLINGS = 12

_UNIT_STIFFNESS = np.array([[1.0, -1.0], [-1.0, 1.0]])
_UNIT_MASS = np.array([[2.0, 1.0], [1.0, 2.0]]) / 6.0
# C[i, j] = int phi_i' phi_j over one cell, independent of the cell width
_MIXED = 0.5 * np.array([[-1.0, -1.0], [1.0, 1.0]])


def _batched_kron(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """kron(x[i], y) for a stack of 2x2 matrices x and a 4x4 matrix y."""
    n = x.shape[0]
    return np.einsum("iab,cd->iacbd", x, y).reshape(n, 8, 8)


def _radial_elements(grid: CurvedGrid) -> tuple[np.ndarray, ...]:
    """Per-cell 2x2 radial matrices: int w u'v', int w uv and int w uv / D_a."""
    t, gw = leggauss(QUADRATURE_ORDER)
    t, gw = 0.5 * (t + 1.0), 0.5 * gw
    r = grid.r_nodes
    h = np.diff(r)
    points = r[:-1, None] + h[:, None] * t[None, :]
    w, inv_theta, inv_z = grid.radial_factors(points)
    phi = np.stack([1.0 - t, t])

    def weighted_mass(weight: np.ndarray) -> np.ndarray:
        return h[:, None, None] * np.einsum("iq,aq,bq->iab", weight * gw, phi, phi)

    stiffness = (np.sum(w * gw, axis=1) / h)[:, None, None] * _UNIT_STIFFNESS
    return stiffness, weighted_mass(w), weighted_mass(w * inv_theta), weighted_mass(w * inv_z)


def _cross_section_elements(grid: CurvedGrid) -> tuple[np.ndarray, list[np.ndarray]]:
    """Q1 mass and the two warped stiffness blocks on one periodic cell."""
    h1, h2 = 1.0 / grid.n1, 1.0 / grid.n2
    k1, m1 = _UNIT_STIFFNESS / h1, _UNIT_MASS * h1
    k2, m2 = _UNIT_STIFFNESS / h2, _UNIT_MASS * h2
    s11 = np.kron(k1, m2)
    s22 = np.kron(m1, k2)
    s12 = np.kron(_MIXED, _MIXED.T)
    C = grid.inverse_form()
    blocks = [
        C[0, a] ** 2 * s11 + C[1, a] ** 2 * s22 + C[0, a] * C[1, a] * (s12 + s12.T)
        for a in range(2)
    ]
    return np.kron(m1, m2), blocks


def _apply_scheme(local: np.ndarray, scheme: MassScheme) -> np.ndarray:
    if scheme is MassScheme.CONSISTENT:
        return local
    lumped = np.zeros_like(local)
    idx = np.arange(local.shape[-1])
    lumped[..., idx, idx] = local.sum(axis=-1)
    if scheme is MassScheme.LUMPED:
        return lumped
    return 0.5 * (local + lumped)


def _element_nodes(grid: CurvedGrid) -> np.ndarray:
    """Global node numbers of the 8 corners of every element, (Nr, n1, n2, 8)."""
    n1, n2 = grid.n1, grid.n2
    I, J, K = np.meshgrid(
        np.arange(grid.r_cells), np.arange(n1), np.arange(n2), indexing="ij"
    )
    corners = [
        ((I + a) * n1 + (J + b) % n1) * n2 + (K + c) % n2
        for a in (0, 1)
        for b in (0, 1)
        for c in (0, 1)
    ]
    return np.stack(corners, axis=-1)


def _assemble(local: np.ndarray, factor: np.ndarray, nodes: np.ndarray, size: int) -> sparse.csr_matrix:
    data = factor[..., None, None] * local[:, None, None, :, :]
    rows = np.broadcast_to(nodes[..., :, None], data.shape)
    cols = np.broadcast_to(nodes[..., None, :], data.shape)
    matrix = sparse.coo_matrix(
        (data.ravel(), (rows.ravel(), cols.ravel())), shape=(size, size)
    )
    return matrix.tocsr()


class GridOracle(IGridOracle):
    """Brute-force discretization of the tube Laplacian on a curved grid."""

    def __init__(self, spectrum_service: ITubeSpectrumService, config: Optional[AppConfig] = None):
        self._spectrum_service = spectrum_service
        self._config = config or get_config()
        self._oracle_config = self._config.oracle
        self._logger = get_logger(__name__)

    def default_spec(self, config: Optional[OracleConfig] = None) -> GridSpec:
        cfg = config or self._oracle_config
        return GridSpec(
            r_cells=cfg.r_nodes,
            grading=cfg.grading,
            inner_bc=InnerBoundary(cfg.inner_bc),
            mass_scheme=MassScheme(cfg.mass_scheme),
        )

    def build_operator(
        self,
        basis: LatticeBasis,
        geometry: TubeGeometry,
        right_bc: BoundarySpec,
        spec: Optional[GridSpec] = None,
        epsilon: Optional[float] = None,
        resolve_energy: Optional[float] = None,
        conformal: Optional[ConformalFactor] = None,
        config: Optional[OracleConfig] = None,
    ) -> GridProblem:
        cfg = config or self._oracle_config
        spec = spec or self.default_spec(cfg)
        radius = geometry.radius
        if right_bc.right is RightCondition.ROBIN:
            raise BadConfig(
                "The oracle supports Dirichlet or natural conditions at R",
                field="right_bc",
                value=right_bc.right_label,
            )
        inner_bc = spec.inner_bc
        if right_bc.left is LeftCondition.DIRICHLET_AT:
            epsilon, inner_bc = right_bc.epsilon, InnerBoundary.DIRICHLET
        epsilon = cfg.epsilon_fraction * radius if epsilon is None else float(epsilon)
        if not 0 < epsilon < radius:
            raise BadConfig("Inner radius must lie in (0, R)", field="epsilon", value=epsilon)

        reduced, _ = reduce_basis(basis, boundary_metric(radius))
        n1, n2 = self._cross_section_counts(basis, reduced, radius, spec, resolve_energy, cfg)
        r_nodes = epsilon + (radius - epsilon) * (np.arange(spec.r_cells + 1) / spec.r_cells) ** spec.grading
        r_nodes[-1] = radius
        grid = CurvedGrid(radius, epsilon, r_nodes, n1, n2, reduced, spec.metric)

        factor = np.ones((grid.r_cells, n1, n2))
        if conformal is not None:
            factor = np.broadcast_to(np.asarray(conformal(*grid.cell_centers()), dtype=float), factor.shape)
            if not np.all(np.isfinite(factor)) or np.any(factor <= 0):
                raise ValidationError("Conformal factor must be positive and finite", field="conformal")
            factor = np.array(factor)

        details = {"nodes": grid.size, "n1": n1, "n2": n2, "r_cells": grid.r_cells}
        with self._logger.log_computation("oracle_assembly", details):
            k_r, m_r, a_theta, a_z = _radial_elements(grid)
            m_s, (t_theta, t_z) = _cross_section_elements(grid)
            stiffness_local = (
                _batched_kron(k_r, m_s) + _batched_kron(a_theta, t_theta) + _batched_kron(a_z, t_z)
            )
            mass_local = _apply_scheme(_batched_kron(m_r, m_s), spec.mass_scheme)
            nodes = _element_nodes(grid)
            stiffness = _assemble(stiffness_local, factor, nodes, grid.size)
            mass = _assemble(mass_local, factor**3, nodes, grid.size)

        layer = n1 * n2
        free = np.ones(grid.size, dtype=bool)
        if inner_bc is InnerBoundary.DIRICHLET:
            free[:layer] = False
        if right_bc.right is RightCondition.DIRICHLET:
            free[-layer:] = False
        return GridProblem(
            grid=grid,
            stiffness=stiffness,
            mass=mass,
            free=free,
            right_bc=right_bc.right_label,
            inner_bc=inner_bc,
            mass_scheme=spec.mass_scheme,
            cell_factor=factor,
        )

    def _cross_section_counts(
        self,
        basis: LatticeBasis,
        reduced: LatticeBasis,
        radius: float,
        spec: GridSpec,
        resolve_energy: Optional[float],
        cfg: OracleConfig,
    ) -> tuple[int, int]:
        ppp = cfg.points_per_period
        highest = [0, 0]
        if resolve_energy is not None:
            for level in enumerate_modes(basis, radius, max(resolve_energy, 0.0), self._config.mode_cap):
                for axis, pairing in enumerate(level.mode.pairings(reduced)):
                    highest[axis] = max(highest[axis], int(round(abs(pairing))))

        counts = []
        for axis, given in enumerate((spec.n1, spec.n2)):
            required = ppp * max(1, highest[axis])
            if given is None:
                counts.append(required)
                continue
            if given == 1 and highest[axis] == 0:
                counts.append(1)
                continue
            if given < ppp or (resolve_energy is not None and given < required):
                raise GridTooCoarse(axis, given, required)
            counts.append(int(given))
        return counts[0], counts[1]

    def oracle_spectrum(
        self, problem: GridProblem, k: int, config: Optional[OracleConfig] = None
    ) -> SparseSpectralResult:
        cfg = config or self._oracle_config
        K, M = problem.restricted()
        dim = K.shape[0]
        if not 1 <= k < dim:
            raise BadConfig("k must lie in [1, dimension)", field="k", value=k)

        with self._logger.log_computation("oracle_spectrum", {"dimension": dim, "k": k}) as outcome:
            if dim <= cfg.dense_limit:
                solver = "eigh"
                values, vectors = self._dense(K, M, k)
            else:
                solver = "eigsh"
                values, vectors = self._shift_invert(K, M, k, cfg)
            residuals = self._residuals(K, M, values, vectors)
            outcome.update({"solver": solver, "worst_residual": float(residuals.max())})

        if np.any(residuals > cfg.residual_tol * np.maximum(1.0, np.abs(values))):
            raise IterationFailure(solver, residuals=residuals.tolist())
        return SparseSpectralResult(values, residuals, problem.expand(vectors), solver)

    @staticmethod
    def _dense(K: sparse.csr_matrix, M: sparse.csr_matrix, k: int) -> tuple[np.ndarray, np.ndarray]:
        try:
            return linalg.eigh(K.toarray(), M.toarray(), subset_by_index=[0, k - 1])
        except (linalg.LinAlgError, ValueError) as e:
            raise IterationFailure("eigh", original_error=e) from e

    def _shift_invert(
        self, K: sparse.csr_matrix, M: sparse.csr_matrix, k: int, cfg: OracleConfig
    ) -> tuple[np.ndarray, np.ndarray]:
        # K is positive semidefinite, so K - SHIFT * M is positive definite
        shifted = (K - SHIFT * M).tocsc()
        try:
            factor = splu(shifted)
        except RuntimeError as e:
            raise IterationFailure("splu", original_error=e) from e
        inverse = LinearOperator(shifted.shape, matvec=factor.solve, dtype=float)
        start = np.random.default_rng(self._config.seed).standard_normal(K.shape[0])
        try:
            values, vectors = eigsh(
                K, k=k, M=M, sigma=SHIFT, which="LM", OPinv=inverse, v0=start, tol=cfg.eigen_tol
            )
        except ArpackNoConvergence as e:
            raise IterationFailure("eigsh", original_error=e) from e
        except (ArpackError, ValueError) as e:
            raise IterationFailure("eigsh", original_error=e) from e
        order = np.argsort(values)
        return values[order], vectors[:, order]

    @staticmethod
    def _residuals(K, M, values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        Mv = M @ vectors
        return np.linalg.norm(K @ vectors - Mv * values, axis=0) / np.linalg.norm(Mv, axis=0)

    def quasi_isometry_bracket(
        self, first: GridProblem, second: GridProblem, beta: float, k: int
    ) -> BracketReport:
        if beta < 0:
            raise ValidationError("beta must be non-negative", field="beta", value=beta)
        same_grid = (
            first.grid.shape == second.grid.shape
            and np.array_equal(first.grid.r_nodes, second.grid.r_nodes)
            and np.array_equal(first.free, second.free)
        )
        if not same_grid:
            raise ValidationError(
                "Bracketing needs two metrics on the same grid and boundary", field="second"
            )
        scale = second.cell_factor / first.cell_factor
        cell_ratio = float(max(scale.max(), 1.0 / scale.min()))
        if cell_ratio > (1.0 + beta) * (1.0 + RATIO_SLACK):
            raise NotQuasiIsometric(cell_ratio, beta)

        lower = self.oracle_spectrum(first, k).values
        upper = self.oracle_spectrum(second, k).values
        floor = ZERO_FLOOR * max(1.0, float(np.max(np.abs(lower))))
        both_zero = (np.abs(lower) <= floor) & (np.abs(upper) <= floor)
        ratios = np.where(both_zero, 1.0, upper / np.where(both_zero, 1.0, lower))
        worst = float(np.max(np.maximum(ratios, 1.0 / ratios)))
        self._logger.info("Quasi-isometry bracket", {"beta": beta, "worst_ratio": worst})
        return BracketReport(
            beta=beta,
            ratios=ratios,
            worst_ratio=worst,
            stated_bound=(1.0 + beta) ** 2,
            provable_bound=(1.0 + beta) ** 4,
            cell_ratio=cell_ratio,
        )

    def oracle_compare(
        self,
        basis: LatticeBasis,
        geometry: TubeGeometry,
        k: int,
        right_bc: BoundarySpec,
        refine: bool = False,
        spec: Optional[GridSpec] = None,
    ) -> OracleComparison:
        reference = self._mode_values(basis, geometry, k, right_bc)
        energy = reference[-1].value
        spec = spec or self.default_spec()
        problem = self.build_operator(basis, geometry, right_bc, spec, resolve_energy=energy)
        rows = self._rows(reference, self.oracle_spectrum(problem, k).values)

        refined_rows = None
        if refine:
            finer = spec.refined(problem.grid.n1, problem.grid.n2)
            fine_problem = self.build_operator(basis, geometry, right_bc, finer, resolve_energy=energy)
            refined_rows = self._rows(reference, self.oracle_spectrum(fine_problem, k).values)

        comparison = OracleComparison(rows=rows, refined_rows=refined_rows)
        self._logger.info(
            "Oracle comparison",
            {
                "k": k,
                "max_deviation": comparison.max_deviation,
                "refined_max_deviation": comparison.refined_max_deviation,
            },
        )
        return comparison

    def _mode_values(
        self, basis: LatticeBasis, geometry: TubeGeometry, k: int, right_bc: BoundarySpec
    ) -> tuple[SpectrumEntry, ...]:
        top = INITIAL_WINDOW_TOP
        for _ in range(MAX_WINDOW_DOUBLINGS):
            spectrum = self._spectrum_service.assemble_spectrum(basis, geometry, right_bc, (-1.0, top))
            if len(spectrum.entries) >= k:
                return spectrum.entries[:k]
            top *= 2.0
        raise NoConvergence("mode window search", steps=MAX_WINDOW_DOUBLINGS)

    @staticmethod
    def _rows(reference: tuple[SpectrumEntry, ...], values: np.ndarray) -> tuple[ComparisonRow, ...]:
        return tuple(
            ComparisonRow(i, entry.value, float(value), entry.mode.index)
            for i, (entry, value) in enumerate(zip(reference, values))
        )
