from math import pi

import numpy as np
import pytest

from tubespec.core.exceptions import BadConfig, NonPositiveRadius, ValidationError, ZeroFunction
from tubespec.domain.potentials import ConstantPotential, ModePotential, mode_gap
from tubespec.domain.value_objects import BoundarySpec, DualMode

pytestmark = pytest.mark.unit

FREE = ConstantPotential(0.0)


class TestRegularPotentials:
    def test_dirichlet_free_operator(self, solver):
        result = solver.solve(FREE, pi, BoundarySpec.dirichlet(), count=3)
        np.testing.assert_allclose(result.values, [1.0, 4.0, 9.0], atol=1e-3)
        assert result.epsilon_used is None
        assert result.mesh_descriptor.extrapolation == "richardson"

    def test_natural_end_gives_quarter_integers(self, solver):
        result = solver.solve(FREE, pi, BoundarySpec.natural(), count=3)
        np.testing.assert_allclose(result.values, [0.25, 2.25, 6.25], atol=1e-3)

    def test_robin_zero_is_the_natural_condition(self, solver):
        robin = solver.solve(FREE, pi, BoundarySpec.robin(0.0), count=2)
        natural = solver.solve(FREE, pi, BoundarySpec.natural(), count=2)
        np.testing.assert_allclose(robin.values, natural.values, rtol=1e-12)

    def test_window_selects_by_index(self, solver):
        result = solver.solve(FREE, pi, BoundarySpec.dirichlet(), window=(3.0, 10.0))
        np.testing.assert_allclose(result.values, [4.0, 9.0], atol=1e-3)
        assert result.indices.tolist() == [1, 2]

    def test_window_without_eigenvalues_is_empty(self, solver):
        result = solver.solve(FREE, pi, BoundarySpec.dirichlet(), window=(1.5, 3.5))
        assert result.is_empty

    def test_constant_shift_moves_the_spectrum(self, solver):
        result = solver.solve(ConstantPotential(1.0), pi, BoundarySpec.dirichlet(), count=2)
        np.testing.assert_allclose(result.values, [2.0, 5.0], atol=1e-3)

    def test_sturm_count_matches_the_model_spectrum(self, solver):
        # 1 + (k pi / 10)^2 lies in [1, 2] for k = 1, 2, 3
        count = solver.count_window(ConstantPotential(1.0), 10.0, BoundarySpec.dirichlet(), (1.0, 2.0))
        assert count == 3

    def test_single_discretization_is_not_extrapolated(self, solver):
        result = solver.discrete_eigenvalues(FREE, pi, BoundarySpec.dirichlet(), 2)
        assert result.mesh_descriptor.extrapolation == "none"
        np.testing.assert_allclose(result.values, [1.0, 4.0], atol=1e-2)


class TestRequestValidation:
    def test_window_and_count_are_exclusive(self, solver):
        with pytest.raises(BadConfig):
            solver.solve(FREE, pi, BoundarySpec.dirichlet(), window=(0.0, 1.0), count=2)

    def test_neither_window_nor_count(self, solver):
        with pytest.raises(BadConfig):
            solver.solve(FREE, pi, BoundarySpec.dirichlet())

    def test_inverted_window(self, solver):
        with pytest.raises(BadConfig):
            solver.solve(FREE, pi, BoundarySpec.dirichlet(), window=(2.0, 1.0))

    def test_unbounded_window(self, solver):
        with pytest.raises(BadConfig):
            solver.solve(FREE, pi, BoundarySpec.dirichlet(), window=(0.0, np.inf))

    def test_non_positive_radius(self, solver):
        with pytest.raises(NonPositiveRadius):
            solver.solve(FREE, 0.0, BoundarySpec.dirichlet(), count=1)


class TestFriedrichsModes:
    def test_zero_mode_with_natural_end_has_eigenvalue_zero(self, solver):
        radius = 2.0
        result = solver.solve(
            ModePotential(DualMode.zero(), radius), radius, BoundarySpec.natural(), count=1
        )
        assert result.values[0] == pytest.approx(0.0, abs=1e-8)
        assert result.epsilon_used is not None
        assert result.mesh_descriptor.ladder_steps >= 1

    def test_zero_mode_profile_is_constant(self, solver):
        radius = 2.0
        result = solver.solve(
            ModePotential(DualMode.zero(), radius), radius, BoundarySpec.natural(), count=1
        )
        profile = result.profiles[0]
        np.testing.assert_allclose(profile, profile[-1], rtol=1e-6)

    def test_dirichlet_zero_mode_decreases_with_radius(self, solver):
        mode = DualMode.zero()
        short = solver.solve(ModePotential(mode, 2.0), 2.0, BoundarySpec.dirichlet(), count=1)
        long = solver.solve(ModePotential(mode, 3.0), 3.0, BoundarySpec.dirichlet(), count=1)
        assert 0.0 < long.values[0] < short.values[0]

    def test_nonzero_mode_lies_above_its_gap(self, solver, smooth_basis):
        radius = 2.0
        mode = DualMode.from_index(smooth_basis, 1, 0)
        result = solver.solve(ModePotential(mode, radius), radius, BoundarySpec.natural(), count=1)
        zero = solver.solve(
            ModePotential(DualMode.zero(), radius), radius, BoundarySpec.natural(), count=1
        )
        gap = mode_gap(mode, radius)
        assert result.values[0] >= zero.values[0] + gap - 1e-6

    def test_error_estimates_are_reported(self, solver, smooth_basis):
        radius = 2.0
        mode = DualMode.from_index(smooth_basis, 1, 0)
        result = solver.solve(ModePotential(mode, radius), radius, BoundarySpec.dirichlet(), count=2)
        assert result.error_estimates.shape == result.values.shape
        assert np.all(result.error_estimates >= 0.0)
        assert np.all(result.error_estimates < 1e-3 * np.maximum(1.0, result.values))


class TestRayleighQuotient:
    def test_sine_has_quotient_one(self, solver):
        r = np.linspace(0.0, pi, 2001)
        value = solver.rayleigh_quotient(r, np.sin(r), FREE, BoundarySpec.dirichlet())
        assert value == pytest.approx(1.0, abs=1e-4)

    def test_zero_samples(self, solver):
        r = np.linspace(0.0, pi, 51)
        with pytest.raises(ZeroFunction):
            solver.rayleigh_quotient(r, np.zeros_like(r), FREE)

    def test_function_must_vanish_at_dirichlet_end(self, solver):
        r = np.linspace(0.0, pi, 51)
        with pytest.raises(ValidationError):
            solver.rayleigh_quotient(r, np.ones_like(r), FREE, BoundarySpec.dirichlet())

    def test_misaligned_samples(self, solver):
        with pytest.raises(ValidationError):
            solver.rayleigh_quotient(np.linspace(0.1, 1.0, 5), np.ones(4), FREE)


@pytest.mark.parametrize("radius", [1.0, 2.0, 4.0, 6.0])
def test_zero_lies_in_the_spectrum(solver, radius):
    # Robin with kappa = coth(2R) is the natural condition for the profile f
    bc = BoundarySpec.robin(1.0 / np.tanh(2.0 * radius))
    result = solver.solve(ModePotential(DualMode.zero(), radius), radius, bc, count=1)
    assert abs(result.values[0]) < 1e-6


@pytest.mark.parametrize("radius", [0.937, 2.077, 4.379, 6.682])
def test_window_from_zero_keeps_the_natural_ground_state(solver, radius):
    result = solver.solve(
        ModePotential(DualMode.zero(), radius), radius, BoundarySpec.natural(), window=(0.0, 1.0)
    )
    assert result.indices[0] == 0
    assert result.values[0] == pytest.approx(0.0, abs=1e-8)


@pytest.mark.parametrize("radius", [0.937, 4.379])
def test_window_count_from_zero_sees_the_ground_state(solver, radius):
    potential = ModePotential(DualMode.zero(), radius)
    count = solver.count_window(potential, radius, BoundarySpec.natural(), (0.0, 1.0))
    listed = solver.solve(potential, radius, BoundarySpec.natural(), window=(0.0, 1.0))
    assert count >= 1
    assert count == len(listed)


def test_truncated_eigenvalues_decrease_along_the_ladder(solver, app_config):
    radius = 2.0
    potential = ModePotential(DualMode.zero(), radius)
    eps0 = app_config.solver.first_epsilon(radius)
    rows = []
    for step in range(8):
        bc = BoundarySpec.natural().truncated_at(eps0 * 0.5**step)
        rows.append(solver.discrete_eigenvalues(potential, radius, bc, 3).values)
    rows = np.array(rows)
    slack = 1e-10 * np.maximum(1.0, np.abs(rows[:-1]))
    assert np.all(rows[1:] <= rows[:-1] + slack)


@pytest.mark.parametrize("radius", [1.0, 2.0, 4.0])
def test_dirichlet_zero_mode_lies_above_one(solver, radius):
    result = solver.solve(
        ModePotential(DualMode.zero(), radius), radius, BoundarySpec.dirichlet(), count=3
    )
    assert np.all(result.values >= 1.0 - 1e-8)
