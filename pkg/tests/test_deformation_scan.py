from math import pi

import numpy as np
import pytest

from tubespec.core.exceptions import BadFamily, ValidationError
from tubespec.domain.family import ConeFamily, FamilySpec, IrrationalFamily, SmoothFilling
from tubespec.domain.value_objects import BoundarySpec

SMOOTH = FamilySpec(SmoothFilling(lengths=(0.08, 0.04, 0.02, 0.01)))


@pytest.mark.unit
class TestGenerate:
    def test_smooth_family_deepens(self, scan_service):
        members = scan_service.generate(SMOOTH)
        assert [member.index for member in members] == [0, 1, 2, 3]
        assert np.all(np.diff([member.radius for member in members]) > 0)
        np.testing.assert_allclose(
            [member.covolume for member in members], [2.0 * pi * l for l in SMOOTH.shape.lengths]
        )
        assert all(member.shape.is_smooth_filling() for member in members)

    def test_golden_twist_keeps_aspect_bounded(self, scan_service):
        aspects = [member.aspect for member in scan_service.generate(SMOOTH)]
        assert max(aspects) < 3.0

    def test_boundary_area_sets_the_radius(self, scan_service):
        small = scan_service.generate(FamilySpec(SMOOTH.shape, boundary_area=0.5))
        large = scan_service.generate(SMOOTH)
        assert all(a.radius < b.radius for a, b in zip(small, large))

    def test_growing_covolume_is_rejected(self, scan_service):
        with pytest.raises(BadFamily):
            scan_service.generate(FamilySpec(SmoothFilling(lengths=(0.01, 0.02))))

    def test_repeated_length_is_rejected(self, scan_service):
        with pytest.raises(BadFamily):
            scan_service.generate(FamilySpec(SmoothFilling(lengths=(0.02, 0.02))))

    def test_area_law_keeps_the_covolume(self, scan_service):
        family = ConeFamily(alphas=(1.0, 2.0, 3.0), area=0.1, twist_fraction=0.25)
        members = scan_service.generate(FamilySpec(family))
        np.testing.assert_allclose([member.covolume for member in members], 0.1)
        assert [member.shape.alpha for member in members] == [1.0, 2.0, 3.0]

    def test_explicit_cone_lengths(self, scan_service):
        family = ConeFamily(alphas=(1.0, 1.0, 1.0), length_law="explicit", lengths=(0.3, 0.2, 0.1))
        members = scan_service.generate(FamilySpec(family))
        np.testing.assert_allclose([member.covolume for member in members], [0.3, 0.2, 0.1])

    def test_irrational_family(self, scan_service, irrational_basis):
        family = IrrationalFamily(irrational_basis, shrink=(1.0, 0.5, 0.25))
        members = scan_service.generate(FamilySpec(family))
        assert all(member.shape is None for member in members)
        np.testing.assert_allclose(
            [member.covolume for member in members],
            [irrational_basis.covolume() * s**2 for s in (1.0, 0.5, 0.25)],
        )


@pytest.mark.unit
class TestFamilyValidation:
    def test_empty_lengths(self):
        with pytest.raises(BadFamily):
            SmoothFilling(lengths=())

    def test_area_law_needs_an_area(self):
        with pytest.raises(BadFamily):
            ConeFamily(alphas=(1.0, 2.0))

    def test_explicit_lengths_must_match_alphas(self):
        with pytest.raises(BadFamily):
            ConeFamily(alphas=(1.0, 2.0), length_law="explicit", lengths=(0.1,))

    def test_twist_fraction_range(self):
        with pytest.raises(BadFamily):
            ConeFamily(alphas=(1.0,), area=0.1, twist_fraction=1.0)

    def test_boundary_area_must_be_positive(self):
        with pytest.raises(BadFamily):
            FamilySpec(SMOOTH.shape, boundary_area=0.0)


@pytest.mark.unit
class TestScanRequests:
    def test_clustering_needs_four_members(self, scan_service):
        spec = FamilySpec(SmoothFilling(lengths=(0.04, 0.02, 0.01)))
        with pytest.raises(BadFamily):
            scan_service.run_clustering(spec, 1.0)

    def test_cone_area_law_cannot_cluster(self, scan_service):
        family = ConeFamily(alphas=(1.0, 2.0, 3.0, 4.0), area=0.1)
        with pytest.raises(ValidationError):
            scan_service.run_clustering(FamilySpec(family), 1.0)

    @pytest.mark.parametrize("bound", [0.0, 1.0])
    def test_small_eigenvalue_bound_range(self, scan_service, bound):
        with pytest.raises(ValidationError):
            scan_service.small_eigenvalue_table(SMOOTH, bound)


@pytest.mark.slow
class TestClusteringRun:
    def test_smooth_family_report(self, scan_service):
        report = scan_service.run_clustering(SMOOTH, 1.0, small_below=0.5)
        assert len(report.rows) == 4
        for row in report.rows:
            assert row.reference == pytest.approx(row.radius / pi)
        assert report.area_fit.reference_slope == pytest.approx(1.0 / (2.0 * pi))
        assert report.radius_fit.reference_slope == pytest.approx(1.0 / pi)
        assert all(row.tolerant_count >= row.count for row in report.rows)
        # the natural zero mode contributes the eigenvalue 0 on every member
        assert len(report.small_eigenvalues) == 4
        assert all(row[0] == pytest.approx(0.0, abs=1e-8) for row in report.small_eigenvalues)


TAIL = FamilySpec(SmoothFilling(lengths=tuple(10.0**-k for k in range(1, 7))))
LONG = FamilySpec(SmoothFilling(lengths=tuple(10.0**-k for k in range(1, 21))))


@pytest.mark.slow
class TestAcceptanceFamily:
    @pytest.mark.parametrize("x", [1.0, 2.0])
    @pytest.mark.parametrize("right_bc", [BoundarySpec.dirichlet(), BoundarySpec.natural()])
    def test_clustering_slope(self, scan_service, x, right_bc):
        report = scan_service.run_clustering(LONG, x, right_bc)
        assert report.radius_fit.reference_slope == pytest.approx(x / pi)
        assert report.radius_fit.relative_deviation < 0.1

    def test_natural_count_below_one_settles(self, scan_service, spectrum_service):
        counts = []
        for member in scan_service.generate(TAIL):
            spectrum = spectrum_service.assemble_spectrum(
                member.basis, member.geometry, BoundarySpec.natural(), (0.0, 1.0)
            )
            counts.append(spectrum_service.counting_function(spectrum, 0.0, 1.0).strict)
        # the constant profile of the zero mode is always counted
        assert min(counts) >= 1
        assert len(set(counts[-4:])) == 1

    def test_dirichlet_count_below_one_vanishes(self, scan_service, spectrum_service):
        for member in scan_service.generate(TAIL):
            spectrum = spectrum_service.assemble_spectrum(
                member.basis, member.geometry, BoundarySpec.dirichlet(), (0.0, 1.0)
            )
            assert spectrum_service.counting_function(spectrum, 0.0, 1.0).strict == 0
