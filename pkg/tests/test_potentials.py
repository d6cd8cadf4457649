from math import log, pi, sqrt

import numpy as np
import pytest

from tubespec.core.exceptions import NonPositiveRadius, ZeroMode
from tubespec.domain.lattice import enumerate_modes
from tubespec.domain.potentials import (
    EndpointKind,
    ModePotential,
    classify_endpoint,
    count_limit_circle,
    estimate_c2,
    frobenius_exponent,
    mode_gap,
    potential_value,
    v0,
    zero_of_V0,
)
from tubespec.domain.value_objects import DualMode, LatticeBasis

pytestmark = pytest.mark.unit

TWO_PI = 2.0 * pi


def test_v0_matches_its_closed_form_away_from_zero():
    r = np.array([0.01, 0.3, 1.0, 4.0])
    np.testing.assert_allclose(v0(r), 2.0 - 1.0 / np.tanh(2.0 * r) ** 2, rtol=1e-12)


def test_v0_series_branch_matches_the_closed_form():
    r = 5e-5
    assert v0(r) == pytest.approx(2.0 - 1.0 / np.tanh(2.0 * r) ** 2, rel=1e-9)


def test_v0_tends_to_one_at_infinity():
    assert v0(20.0) == pytest.approx(1.0, abs=1e-12)


def test_zero_of_v0():
    assert zero_of_V0() == pytest.approx(0.5 * log(1.0 + sqrt(2.0)), abs=1e-14)


def test_potential_rejects_non_positive_radius():
    with pytest.raises(NonPositiveRadius):
        potential_value(DualMode.zero(), 0.0)


def test_zero_mode_is_limit_circle_with_c2_minus_quarter():
    endpoint = classify_endpoint(DualMode.zero())
    assert endpoint.kind is EndpointKind.LIMIT_CIRCLE
    assert endpoint.c2 == pytest.approx(-0.25)
    assert estimate_c2(DualMode.zero()) == pytest.approx(-0.25, abs=1e-6)


def test_threshold_mode_is_limit_point():
    # 2 pi |lambda_1| = 1 exactly gives c2 = 3/4
    mode = DualMode((1, 0), (1.0 / TWO_PI, 0.0))
    endpoint = classify_endpoint(mode)
    assert endpoint.kind is EndpointKind.LIMIT_POINT
    assert endpoint.c2 == pytest.approx(0.75)


def test_small_lambda1_mode_is_limit_circle():
    mode = DualMode((0, 1), (0.5 / TWO_PI, 3.0))
    assert classify_endpoint(mode).kind is EndpointKind.LIMIT_CIRCLE
    assert frobenius_exponent(mode) == pytest.approx(0.5)


def test_estimated_c2_agrees_with_the_exact_limit():
    mode = DualMode((2, -1), (0.7, 1.3))
    exact = classify_endpoint(mode).c2
    assert estimate_c2(mode) == pytest.approx(exact, rel=1e-5)


def test_smooth_filling_has_only_the_zero_mode_limit_circle():
    # a 2 pi cone angle makes every lambda_1 an integer over 2 pi
    basis = LatticeBasis.from_cone(TWO_PI, 0.0, 0.05)
    levels = enumerate_modes(basis, 2.0, 40.0)
    assert count_limit_circle(levels) == 1


def test_small_cone_angle_has_several_limit_circle_modes():
    basis = LatticeBasis.from_cone(0.5, 0.0, 0.5)
    levels = enumerate_modes(basis, 3.0, 60.0)
    # |lambda_1| = |m| / alpha stays below 1 / (2 pi) only for m = 0
    expected = sum(1 for level in levels if abs(level.mode.lam[0]) < 1.0 / TWO_PI)
    assert count_limit_circle(levels) == expected


def test_mode_gap_is_the_cross_section_eigenvalue_at_r():
    basis = LatticeBasis.from_cone(TWO_PI, 0.0, 0.05)
    mode = DualMode.from_index(basis, 1, 0)
    r = np.linspace(0.05, 2.0, 400)
    difference = potential_value(mode, r) - v0(r)
    assert mode_gap(mode, 2.0) == pytest.approx(difference.min(), rel=1e-12)


def test_zero_mode_has_no_gap():
    with pytest.raises(ZeroMode):
        mode_gap(DualMode.zero(), 1.0)


def test_gauge_form_reproduces_the_potential():
    mode = DualMode((1, 2), (0.4, 0.9))
    potential = ModePotential(mode)
    r = np.array([0.2, 0.7, 1.5])
    phi = potential.gauge(r)
    w = potential.weight(r)
    # V = q + phi'' / phi with phi = sqrt(w); phi'' / phi from finite differences
    h = 1e-4
    second = (potential.gauge(r + h) - 2.0 * phi + potential.gauge(r - h)) / h**2
    np.testing.assert_allclose(potential.reduced(r) + second / phi, potential.value(r), rtol=1e-5)
    np.testing.assert_allclose(phi**2, w)


def test_v0_never_exceeds_one():
    r = np.concatenate([np.logspace(-8, 0, 5000), np.linspace(1.0, 40.0, 5000)])
    assert np.all(v0(r) <= 1.0)


def test_mode_excess_decreases_in_r():
    rng = np.random.default_rng(11)
    r = np.linspace(0.05, 4.0, 400)
    for _ in range(500):
        basis = LatticeBasis(tuple(rng.uniform(-2.0, 2.0, 2)), tuple(rng.uniform(-2.0, 2.0, 2)))
        m, n = rng.integers(-4, 5, size=2)
        if m == 0 and n == 0:
            continue
        mode = DualMode.from_index(basis, int(m), int(n))
        excess = potential_value(mode, r) - v0(r)
        assert np.all(excess >= 0.0)
        assert np.all(np.diff(excess) < 0.0)
