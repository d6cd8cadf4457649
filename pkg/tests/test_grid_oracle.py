from math import pi, sqrt

import numpy as np
import pytest

from tubespec.core.exceptions import BadConfig, GridTooCoarse, NotQuasiIsometric, ValidationError
from tubespec.domain.grid import GridSpec, MassScheme
from tubespec.domain.lattice import solve_tube_radius
from tubespec.domain.potentials import ModePotential
from tubespec.domain.value_objects import BoundarySpec, DualMode, LatticeBasis, TubeGeometry

COLLAPSED = GridSpec(r_cells=64, n1=1, n2=1)


@pytest.fixture
def geometry(smooth_basis) -> TubeGeometry:
    return TubeGeometry.from_radius(smooth_basis.covolume(), 2.0)


@pytest.fixture
def collapsed_problem(oracle, smooth_basis, geometry):
    return oracle.build_operator(smooth_basis, geometry, BoundarySpec.natural(), COLLAPSED)


def _constant(value: float):
    return lambda r, s1, s2: np.full_like(r, value)


@pytest.mark.unit
class TestBuildOperator:
    def test_collapsed_grid_keeps_one_node_per_radius(self, collapsed_problem):
        grid = collapsed_problem.grid
        assert grid.shape == (65, 1, 1)
        assert collapsed_problem.dimension == 65
        assert grid.r_nodes[-1] == pytest.approx(2.0)
        assert grid.epsilon == pytest.approx(2.0 / 64.0)

    def test_dirichlet_at_r_drops_the_outer_layer(self, oracle, smooth_basis, geometry):
        problem = oracle.build_operator(smooth_basis, geometry, BoundarySpec.dirichlet(), COLLAPSED)
        assert problem.dimension == 64
        assert not problem.free[-1]

    def test_axis_below_points_per_period(self, oracle, smooth_basis, geometry):
        with pytest.raises(GridTooCoarse):
            oracle.build_operator(
                smooth_basis, geometry, BoundarySpec.natural(), GridSpec(n1=2, n2=8)
            )

    def test_collapsed_axis_cannot_resolve_modes(self, oracle, smooth_basis, geometry):
        with pytest.raises(GridTooCoarse):
            oracle.build_operator(
                smooth_basis, geometry, BoundarySpec.natural(), COLLAPSED, resolve_energy=50.0
            )

    def test_robin_is_not_supported(self, oracle, smooth_basis, geometry):
        with pytest.raises(BadConfig):
            oracle.build_operator(smooth_basis, geometry, BoundarySpec.robin(0.5), COLLAPSED)

    def test_inner_radius_inside_the_tube(self, oracle, smooth_basis, geometry):
        with pytest.raises(BadConfig):
            oracle.build_operator(
                smooth_basis, geometry, BoundarySpec.natural(), COLLAPSED, epsilon=3.0
            )

    def test_conformal_factor_must_be_positive(self, oracle, smooth_basis, geometry):
        with pytest.raises(ValidationError):
            oracle.build_operator(
                smooth_basis, geometry, BoundarySpec.natural(), COLLAPSED, conformal=_constant(-1.0)
            )


@pytest.mark.unit
class TestOracleSpectrum:
    def test_natural_ground_state_is_zero(self, oracle, collapsed_problem):
        result = oracle.oracle_spectrum(collapsed_problem, 3)
        assert result.solver == "eigh"
        assert result.values[0] == pytest.approx(0.0, abs=1e-8)
        assert np.all(np.diff(result.values) > 0)
        assert result.vectors.shape == (collapsed_problem.grid.size, 3)

    def test_collapsed_grid_matches_the_zero_mode(self, oracle, solver, collapsed_problem):
        values = oracle.oracle_spectrum(collapsed_problem, 3).values
        radial = solver.solve(
            ModePotential(DualMode.zero(), 2.0), 2.0, BoundarySpec.natural(), count=3
        ).values
        np.testing.assert_allclose(values[1:], radial[1:], rtol=1e-2)

    @pytest.mark.parametrize("k", [0, 65])
    def test_k_out_of_range(self, oracle, collapsed_problem, k):
        with pytest.raises(BadConfig):
            oracle.oracle_spectrum(collapsed_problem, k)

    def test_lumped_mass_lowers_eigenvalues(self, oracle, smooth_basis, geometry):
        values = {}
        for scheme in MassScheme:
            spec = GridSpec(r_cells=64, n1=1, n2=1, mass_scheme=scheme)
            problem = oracle.build_operator(smooth_basis, geometry, BoundarySpec.dirichlet(), spec)
            values[scheme] = oracle.oracle_spectrum(problem, 4).values
        slack = 1e-10
        assert np.all(values[MassScheme.LUMPED] <= values[MassScheme.BLENDED] * (1 + slack))
        assert np.all(values[MassScheme.BLENDED] <= values[MassScheme.CONSISTENT] * (1 + slack))


@pytest.mark.unit
class TestQuasiIsometryBracket:
    def test_constant_factor_rescales_the_spectrum(self, oracle, smooth_basis, geometry, collapsed_problem):
        scaled = oracle.build_operator(
            smooth_basis, geometry, BoundarySpec.natural(), COLLAPSED, conformal=_constant(1.05)
        )
        report = oracle.quasi_isometry_bracket(collapsed_problem, scaled, 0.1, 4)
        # stiffness scales by rho and mass by rho^3
        assert report.ratios[0] == 1.0
        np.testing.assert_allclose(report.ratios[1:], 1.0 / 1.05**2, rtol=1e-8)
        assert report.worst_ratio == pytest.approx(1.05**2, rel=1e-8)
        assert report.cell_ratio == pytest.approx(1.05)
        assert report.stated_bound == pytest.approx(1.21)
        assert report.provable_bound == pytest.approx(1.1**4)
        assert report.within_stated
        assert report.within_provable

    def test_factor_beyond_beta(self, oracle, smooth_basis, geometry, collapsed_problem):
        scaled = oracle.build_operator(
            smooth_basis, geometry, BoundarySpec.natural(), COLLAPSED, conformal=_constant(1.5)
        )
        with pytest.raises(NotQuasiIsometric):
            oracle.quasi_isometry_bracket(collapsed_problem, scaled, 0.1, 3)

    def test_grids_must_agree(self, oracle, smooth_basis, geometry, collapsed_problem):
        other = oracle.build_operator(
            smooth_basis, geometry, BoundarySpec.natural(), GridSpec(r_cells=32, n1=1, n2=1)
        )
        with pytest.raises(ValidationError):
            oracle.quasi_isometry_bracket(collapsed_problem, other, 0.1, 3)

    def test_negative_beta(self, oracle, collapsed_problem):
        with pytest.raises(ValidationError):
            oracle.quasi_isometry_bracket(collapsed_problem, collapsed_problem, -0.1, 3)


@pytest.mark.slow
def test_oracle_agrees_with_the_mode_decomposition(oracle, smooth_basis, geometry):
    comparison = oracle.oracle_compare(smooth_basis, geometry, 3, BoundarySpec.natural())
    assert len(comparison.rows) == 3
    assert comparison.rows[0].mode == (0, 0)
    assert comparison.max_deviation < 0.05
    assert comparison.refined_rows is None
    assert comparison.refined_max_deviation is None


def _scaled_to(basis: LatticeBasis, covolume: float) -> LatticeBasis:
    return basis.scaled(sqrt(covolume / basis.covolume()))


ORACLE_SHAPES = {
    "smooth": LatticeBasis.from_cone(2.0 * pi, 0.0, 0.05),
    "cone": LatticeBasis.from_cone(pi, 0.3, 0.05),
    "irrational": _scaled_to(LatticeBasis((1.0, sqrt(2.0)), (sqrt(3.0), 1.0)), 0.1),
}


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(ORACLE_SHAPES))
def test_oracle_agreement_on_the_reference_shapes(oracle, name):
    basis = ORACLE_SHAPES[name]
    geometry = solve_tube_radius(basis, 1.0)
    comparison = oracle.oracle_compare(basis, geometry, 10, BoundarySpec.natural(), refine=True)
    assert len(comparison.rows) == 10
    assert comparison.max_deviation < 0.02
    assert comparison.refined_max_deviation <= 0.005


@pytest.mark.slow
@pytest.mark.parametrize("right_bc", [BoundarySpec.dirichlet(), BoundarySpec.natural()])
def test_non_uniform_conformal_factor_stays_bracketed(oracle, smooth_basis, geometry, right_bc):
    spec = GridSpec(r_cells=32, n1=8, n2=8)

    def bump(r, s1, s2):
        # ranges over [1, 1.09], so the cell ratio stays under 1 + beta
        wave = np.sin(2.0 * pi * s1) * np.cos(2.0 * pi * s2) * np.cos(pi * r / 2.0)
        return 1.0 + 0.045 * (1.0 + wave)

    flat = oracle.build_operator(smooth_basis, geometry, right_bc, spec)
    bent = oracle.build_operator(smooth_basis, geometry, right_bc, spec, conformal=bump)
    report = oracle.quasi_isometry_bracket(flat, bent, 0.1, 10)
    assert report.cell_ratio > 1.0
    assert np.ptp(report.ratios[report.ratios != 1.0]) > 0.0
    assert np.all(report.ratios <= 1.21)
    assert np.all(report.ratios >= 1.0 / 1.21)
    assert report.within_stated
