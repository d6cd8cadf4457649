from math import asinh, cosh, pi, sinh, sqrt

import numpy as np
import pytest

from tubespec.core.exceptions import BoundTooLarge, DegenerateLattice, NotCoprime, ValidationError
from tubespec.domain.lattice import (
    ConeTube,
    IrrationalTube,
    boundary_torus_aspect,
    classify,
    cross_section_eigenvalue,
    dehn_coefficients,
    enumerate_modes,
    reduce_basis,
    solve_tube_radius,
    tube_constants,
)
from tubespec.domain.value_objects import DualMode, LatticeBasis, TubeGeometry

pytestmark = pytest.mark.unit

TWO_PI = 2.0 * pi


class TestLatticeBasis:
    def test_cone_covolume_is_alpha_times_length(self):
        basis = LatticeBasis.from_cone(1.5, 0.4, 0.2)
        assert basis.covolume() == pytest.approx(0.3)

    def test_dependent_vectors_are_rejected(self):
        with pytest.raises(DegenerateLattice):
            LatticeBasis((1.0, 0.0), (2.0, 0.0))

    def test_non_numeric_vector_is_rejected(self):
        with pytest.raises(ValidationError):
            LatticeBasis(("a", 0.0), (0.0, 1.0))

    @pytest.mark.parametrize(("m", "n"), [(1, 0), (0, 1), (3, -2), (-7, 5)])
    def test_dual_modes_pair_to_their_index(self, m, n):
        basis = LatticeBasis((1.3, 0.5), (2.3, 0.5))
        mode = DualMode.from_index(basis, m, n)
        assert mode.pairings(basis) == pytest.approx((m, n))
        assert mode.is_dual_to(basis)

    def test_scaling_scales_covolume_quadratically(self):
        basis = LatticeBasis((1.0, 0.2), (0.3, 0.7))
        assert basis.scaled(0.5).covolume() == pytest.approx(0.25 * basis.covolume())


class TestClassify:
    def test_cone_basis_comes_back_in_normal_form(self):
        shape = classify(LatticeBasis.from_cone(1.0, 0.3, 0.5))
        assert isinstance(shape, ConeTube)
        assert shape.alpha == pytest.approx(1.0)
        assert shape.twist == pytest.approx(0.3)
        assert shape.length == pytest.approx(0.5)

    def test_unimodular_change_of_basis_gives_same_cone(self):
        # u1 = v1 + v2, u2 = 2 v1 + v2 for v1 = (1, 0), v2 = (0.3, 0.5)
        shape = classify(LatticeBasis((1.3, 0.5), (2.3, 0.5)))
        assert isinstance(shape, ConeTube)
        assert shape.alpha == pytest.approx(1.0)
        assert shape.twist == pytest.approx(0.3)
        assert shape.length == pytest.approx(0.5)

    def test_smooth_filling_is_recognized(self):
        shape = classify(LatticeBasis.from_cone(TWO_PI, 0.0, 0.01))
        assert isinstance(shape, ConeTube)
        assert shape.is_smooth_filling()

    def test_irrational_slope_has_no_horizontal_vector(self, irrational_basis):
        shape = classify(irrational_basis)
        assert isinstance(shape, IrrationalTube)
        assert shape.coefficient_bound == 10_000

    def test_negative_tolerance_is_rejected(self, irrational_basis):
        with pytest.raises(ValidationError):
            classify(irrational_basis, tol=-1.0)


class TestEnumerateModes:
    def test_zero_mode_comes_first(self, smooth_basis):
        levels = enumerate_modes(smooth_basis, 2.0, 10.0)
        assert levels[0].mode.is_zero
        assert levels[0].value == 0.0

    def test_matches_brute_force_and_is_sorted(self):
        basis = LatticeBasis((1.0, 0.2), (0.4, 0.9))
        radius, bound = 1.2, 300.0
        levels = enumerate_modes(basis, radius, bound)
        expected = {
            (m, n)
            for m in range(-40, 41)
            for n in range(-40, 41)
            if cross_section_eigenvalue(DualMode.from_index(basis, m, n), radius) <= bound
        }
        assert {level.mode.index for level in levels} == expected
        values = [level.value for level in levels]
        assert values == sorted(values)
        assert max(values) <= bound

    def test_modes_come_in_plus_minus_pairs(self, smooth_basis):
        indices = {level.mode.index for level in enumerate_modes(smooth_basis, 2.0, 5.0)}
        assert all((-m, -n) in indices for m, n in indices)

    def test_cap_is_enforced(self, smooth_basis):
        with pytest.raises(BoundTooLarge):
            enumerate_modes(smooth_basis, 2.0, 1e6, mode_cap=10)

    def test_negative_bound_is_rejected(self, smooth_basis):
        with pytest.raises(ValidationError):
            enumerate_modes(smooth_basis, 2.0, -1.0)


class TestTubeGeometry:
    def test_radius_fixes_the_boundary_area(self, smooth_basis):
        geometry = solve_tube_radius(smooth_basis, 1.0)
        covol = smooth_basis.covolume()
        assert geometry.radius == pytest.approx(0.5 * asinh(2.0 / covol))
        assert sinh(geometry.radius) * cosh(geometry.radius) * covol == pytest.approx(1.0)

    @pytest.mark.parametrize("length", [0.5, 0.05, 1e-4])
    def test_e2r_covolume_lies_between_its_bounds(self, length):
        geometry = solve_tube_radius(LatticeBasis.from_cone(TWO_PI, 0.0, length), 1.0)
        constants = tube_constants(geometry)
        assert constants.lower <= constants.e2r_covolume * (1 + 1e-12)
        assert constants.e2r_covolume <= constants.upper * (1 + 1e-12)

    def test_inconsistent_area_is_rejected(self):
        with pytest.raises(ValidationError):
            TubeGeometry(radius=1.0, boundary_area=5.0, base_covolume=1.0)

    def test_radius_convention_can_be_overridden(self, smooth_basis):
        geometry = TubeGeometry.from_radius(smooth_basis.covolume(), 2.0)
        assert geometry.radius == 2.0
        assert geometry.boundary_area == pytest.approx(sinh(2.0) * cosh(2.0) * smooth_basis.covolume())


class TestReduction:
    def test_reduced_basis_spans_the_same_lattice(self):
        basis = LatticeBasis((1.0, 0.0), (7.3, 0.01))
        reduced, U = reduce_basis(basis, np.diag([4.0, 9.0]))
        assert abs(round(np.linalg.det(U))) == 1
        np.testing.assert_allclose(reduced.matrix, basis.matrix @ U, atol=1e-12)
        assert reduced.covolume() == pytest.approx(basis.covolume())

    def test_golden_twist_keeps_boundary_torus_shaped(self):
        twist = TWO_PI * (sqrt(5.0) - 1.0) / 2.0
        aspects = []
        for length in (1e-2, 1e-3, 1e-4):
            basis = LatticeBasis.from_cone(TWO_PI, twist, length)
            aspects.append(boundary_torus_aspect(basis, solve_tube_radius(basis, 1.0).radius))
        assert all(aspect >= 1.0 for aspect in aspects)
        assert max(aspects) < 3.0


class TestDehnCoefficients:
    def test_coefficients_scale_with_cone_angle(self):
        p, q = dehn_coefficients(ConeTube(pi, 0.0, 0.1), 1, 2)
        assert (p, q) == pytest.approx((2.0, 4.0))

    def test_non_coprime_pair_is_rejected(self):
        with pytest.raises(NotCoprime):
            dehn_coefficients(ConeTube(pi, 0.0, 0.1), 2, 4)


class TestLatticeInvariants:
    def test_dual_basis_of_random_lattices(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            v1, v2 = rng.uniform(-3.0, 3.0, size=(2, 2))
            if abs(v1[0] * v2[1] - v1[1] * v2[0]) < 1e-3:
                continue
            basis = LatticeBasis(tuple(v1), tuple(v2))
            w1, w2 = basis.dual_basis()
            dual_covolume = abs(w1[0] * w2[1] - w1[1] * w2[0])
            assert dual_covolume * basis.covolume() == pytest.approx(1.0, abs=1e-10)
            pairings = np.array([[np.dot(w, v) for v in (v1, v2)] for w in (w1, w2)])
            np.testing.assert_allclose(pairings, np.eye(2), atol=1e-10)

    @pytest.mark.parametrize(
        ("alpha", "twist", "length"), [(1.0, 0.3, 0.5), (pi, 0.3, 0.05), (TWO_PI, 1.7, 0.01)]
    )
    @pytest.mark.parametrize("change", [((1, 0), (0, 1)), ((1, 1), (2, 1)), ((3, -2), (-1, 1))])
    def test_classify_is_idempotent(self, alpha, twist, length, change):
        (a, b), (c, d) = change
        v1, v2 = np.array((alpha, 0.0)), np.array((twist, length))
        shape = classify(LatticeBasis(tuple(a * v1 + b * v2), tuple(c * v1 + d * v2)))
        again = classify(shape.basis())
        assert isinstance(again, ConeTube)
        assert again.alpha == pytest.approx(shape.alpha, rel=1e-12)
        assert again.twist == pytest.approx(shape.twist, rel=1e-9, abs=1e-12)
        assert again.length == pytest.approx(shape.length, rel=1e-12)

    def test_worked_smooth_filling_example(self):
        shape = classify(LatticeBasis((TWO_PI, 0.0), (TWO_PI + 0.3, 0.05)))
        assert isinstance(shape, ConeTube)
        assert shape.alpha == pytest.approx(TWO_PI)
        assert shape.twist == pytest.approx(0.3)
        assert shape.length == pytest.approx(0.05)
        assert shape.is_smooth_filling()
