"""Spectral result models shared by the solvers, the oracle and the scans."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .value_objects import BoundarySpec, DualMode, LatticeBasis, TubeGeometry


@dataclass(frozen=True)
class MeshDescriptor:
    """How a radial eigenvalue was discretized."""

    n: int
    grading: float
    nodes: int
    inner: str
    epsilon: float
    ladder_steps: int = 0
    extrapolation: str = "richardson"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "grading": self.grading,
            "nodes": self.nodes,
            "inner": self.inner,
            "epsilon": self.epsilon,
            "ladder_steps": self.ladder_steps,
            "extrapolation": self.extrapolation,
        }


@dataclass(frozen=True)
class EigenList:
    """Eigenvalues of one half-line problem with their discretization data.

    ``profiles`` holds the fine-mesh eigenvectors in the gauge variable
    f = u / phi, normalized in the lumped mass inner product; row i belongs
    to ``values[i]``.
    """

    values: np.ndarray
    error_estimates: np.ndarray
    mesh_descriptor: MeshDescriptor
    epsilon_used: Optional[float]
    indices: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))
    nodes: np.ndarray = field(default_factory=lambda: np.zeros(0))
    profiles: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    gauge: np.ndarray = field(default_factory=lambda: np.zeros(0))
    inner_exponent: float = 0.0

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def is_empty(self) -> bool:
        return self.values.size == 0

    def u_samples(self, i: int) -> np.ndarray:
        """Samples of the i-th eigenfunction in the Schroedinger variable u = phi f."""
        return self.gauge * self.profiles[i]


@dataclass(frozen=True)
class SpectrumEntry:
    value: float
    mode: DualMode
    error_estimate: float
    level: int

    @property
    def index(self) -> tuple[int, int]:
        return self.mode.index


@dataclass(frozen=True)
class TubeSpectrum:
    """Union of the mode spectra inside a window, sorted by (value, mode index)."""

    basis: LatticeBasis
    geometry: TubeGeometry
    right_bc: BoundarySpec
    window: tuple[float, float]
    entries: tuple[SpectrumEntry, ...]
    truncation_bound: float
    modes_solved: int

    @property
    def values(self) -> np.ndarray:
        return np.array([entry.value for entry in self.entries], dtype=float)

    @property
    def error_estimates(self) -> np.ndarray:
        return np.array([entry.error_estimate for entry in self.entries], dtype=float)

    def lowest(self, k: int) -> np.ndarray:
        return self.values[:k]


@dataclass(frozen=True)
class WindowCount:
    """Strict count and the count of entries whose error interval meets the window."""

    strict: int
    tolerant: int


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    reference_slope: float
    residuals: tuple[float, ...]

    @property
    def relative_deviation(self) -> float:
        return abs(self.slope - self.reference_slope) / abs(self.reference_slope)


@dataclass(frozen=True)
class CountingRow:
    radius: float
    covolume: float
    count: int
    tolerant_count: int
    reference: float

    @property
    def residual(self) -> float:
        return self.count - self.reference


@dataclass(frozen=True)
class CountingReport:
    """Counts N[a, b] along a family with the fits against the clustering law."""

    window: tuple[float, float]
    x: float
    right_bc: str
    rows: tuple[CountingRow, ...]
    radius_fit: LinearFit
    area_fit: Optional[LinearFit] = None
    residual_bound: float = 0.0
    residual_trend: float = 0.0
    small_eigenvalues: Optional[tuple[tuple[float, ...], ...]] = None


@dataclass(frozen=True)
class GreensStudy:
    """Green identity defects of one eigenpair on successively bisected meshes."""

    mesh_sizes: tuple[int, ...]
    defects: tuple[float, ...]
    extrapolated: float

    @property
    def residuals(self) -> tuple[float, ...]:
        return tuple(abs(d) for d in self.defects)

    @property
    def ratios(self) -> tuple[float, ...]:
        r = self.residuals
        return tuple(coarse / fine if fine > 0 else float("inf") for coarse, fine in zip(r, r[1:]))

    @property
    def final_residual(self) -> float:
        return abs(self.extrapolated)


@dataclass(frozen=True)
class SlabReport:
    """Slab found by the pigeonhole search together with the reported bounds."""

    radius: float
    slab_mass: float
    boundary_mass: float
    slab_bound: float
    boundary_bound: float
    inner_mass: float
    localization_bound: float
    green_defect: Optional[float] = None
    green_bound: Optional[float] = None
    green_error: Optional[float] = None
    green_error_bound: Optional[float] = None

    @property
    def slab_ok(self) -> bool:
        return self.slab_mass < self.slab_bound

    @property
    def localization_ok(self) -> bool:
        return self.inner_mass < self.localization_bound


@dataclass(frozen=True)
class SparseSpectralResult:
    """Lowest generalized eigenvalues of an oracle problem with their residuals."""

    values: np.ndarray
    residuals: np.ndarray
    vectors: Optional[np.ndarray] = None
    solver: str = "eigsh"


@dataclass(frozen=True)
class BracketReport:
    beta: float
    ratios: np.ndarray
    worst_ratio: float
    stated_bound: float
    provable_bound: float
    cell_ratio: float

    @property
    def within_stated(self) -> bool:
        return bool(np.all(self.ratios <= self.stated_bound) and np.all(self.ratios >= 1.0 / self.stated_bound))

    @property
    def within_provable(self) -> bool:
        return bool(
            np.all(self.ratios <= self.provable_bound) and np.all(self.ratios >= 1.0 / self.provable_bound)
        )


@dataclass(frozen=True)
class ComparisonRow:
    index: int
    mode_value: float
    oracle_value: float
    mode: tuple[int, int]

    @property
    def deviation(self) -> float:
        return abs(self.mode_value - self.oracle_value) / max(1.0, abs(self.mode_value))


@dataclass(frozen=True)
class OracleComparison:
    rows: tuple[ComparisonRow, ...]
    refined_rows: Optional[tuple[ComparisonRow, ...]] = None

    @property
    def max_deviation(self) -> float:
        return max((row.deviation for row in self.rows), default=0.0)

    @property
    def refined_max_deviation(self) -> Optional[float]:
        if self.refined_rows is None:
            return None
        return max((row.deviation for row in self.refined_rows), default=0.0)
