"""Tests for Brocard points, conjugations and the first Brocard triangle."""

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.explorer.generators import gen_triangle, trial_rng
from src.geometry import brocard
from src.geometry.brocard import (
    AffineTriangle,
    Barycentrics,
    brocard_points,
    first_brocard_triangle,
    from_barycentric,
    isogonal_conjugate,
    isotomic_conjugate,
    neuberg_check,
    squared_sides,
    symmedian_point,
    to_barycentric,
)
from src.geometry.errors import (
    DegeneracyError,
    DegenerateConstruction,
    DegenerateTriangle,
    OnSideLine,
)
from src.geometry.kernel import ProjMap, ProjPoint, apply_map
from src.geometry.perspectivity import homology_report
from tests import strategies

PYTHAGOREAN_ROTATIONS = [(1, 0, 1), (0, 1, 1), (3, 4, 5), (4, -3, 5), (5, 12, 13), (-8, 15, 17)]

similarities = st.builds(
    lambda rotation, scale, tx, ty: ProjMap.affine(
        Fraction(scale * rotation[0], rotation[2]),
        Fraction(-scale * rotation[1], rotation[2]),
        tx,
        Fraction(scale * rotation[1], rotation[2]),
        Fraction(scale * rotation[0], rotation[2]),
        ty,
    ),
    st.sampled_from(PYTHAGOREAN_ROTATIONS),
    st.integers(1, 6),
    st.integers(-20, 20),
    st.integers(-20, 20),
)

metric_triangles = strategies.affine_triangles.map(AffineTriangle.from_triangle)


@pytest.fixture
def pythagorean() -> AffineTriangle:
    return AffineTriangle.of((0, 0), (3, 0), (0, 4))


def _angle(vertex, toward, point) -> float:
    """Unsigned angle at `vertex` between the rays to `toward` and to `point`."""
    ux, uy = float(toward[0] - vertex[0]), float(toward[1] - vertex[1])
    vx, vy = float(point[0] - vertex[0]), float(point[1] - vertex[1])
    return abs(math.atan2(ux * vy - uy * vx, ux * vx + uy * vy))


def _random_triangles(count: int) -> list[AffineTriangle]:
    return [
        AffineTriangle.from_triangle(gen_triangle(trial_rng(19, trial), bound=30, affine=True))
        for trial in range(count)
    ]


class TestAffineTriangle:
    """Test the metric triangle wrapper."""

    def test_collinear_rejected(self):
        """Test that collinear vertices are rejected."""
        with pytest.raises(DegenerateTriangle):
            AffineTriangle.of((0, 0), (1, 1), (2, 2))

    def test_rational_strings(self):
        """Test vertices given as rational strings."""
        t = AffineTriangle.of(("1/2", 0), (3, 0), (0, "4/3"))
        assert t.a == (Fraction(1, 2), Fraction(0))

    def test_squared_sides(self, pythagorean):
        """Test (a², b², c²) of the 3-4-5 triangle."""
        assert squared_sides(pythagorean) == (25, 16, 9)

    def test_mapped(self, pythagorean):
        """Test the image under an affine map."""
        moved = pythagorean.mapped(ProjMap.affine(1, 0, 1, 0, 1, 2))
        assert moved == AffineTriangle.of((1, 2), (4, 2), (1, 6))


class TestBarycentrics:
    """Test barycentric conversion."""

    def test_centroid(self, pythagorean):
        """Test that equal weights give the centroid."""
        assert from_barycentric(pythagorean, Barycentrics.of(1, 1, 1)) == ProjPoint.of(1, "4/3")

    def test_zero_mass_is_at_infinity(self, pythagorean):
        """Test that weights summing to zero give a point at infinity."""
        assert from_barycentric(pythagorean, Barycentrics.of(1, -1, 0)).is_at_infinity

    def test_inverse(self, pythagorean):
        """Test that to_barycentric undoes from_barycentric."""
        weights = Barycentrics.of(2, -7, 3)
        assert to_barycentric(pythagorean, from_barycentric(pythagorean, weights)) == weights

    def test_weights_are_canonical(self):
        """Test weights compare up to scale."""
        assert Barycentrics.of(2, 4, 6) == Barycentrics.of(1, 2, 3)


class TestBrocardPoints:
    """Test the two Brocard points and the symmedian point."""

    def test_pythagorean_values(self, pythagorean):
        """Test exact values on the 3-4-5 triangle."""
        first, second = brocard_points(pythagorean)
        assert first == ProjPoint.of("1200/769", "576/769")
        assert second == ProjPoint.of("432/769", "900/769")
        assert symmedian_point(pythagorean) == ProjPoint.of("24/25", "18/25")

    def test_angle_oracle(self):
        """Test the equal-angle property in floating point on random triangles."""
        for t in _random_triangles(20):
            first, second = brocard_points(t)
            w1, w2 = first.affine(), second.affine()
            a, b, c = t.a, t.b, t.c
            first_angles = [_angle(a, b, w1), _angle(b, c, w1), _angle(c, a, w1)]
            second_angles = [_angle(b, a, w2), _angle(c, b, w2), _angle(a, c, w2)]
            for angles in (first_angles, second_angles):
                assert math.isclose(angles[0], angles[1], rel_tol=1e-9)
                assert math.isclose(angles[1], angles[2], rel_tol=1e-9)
            # Both points share the Brocard angle.
            assert math.isclose(first_angles[0], second_angles[0], rel_tol=1e-9)

    @settings(max_examples=300)
    @given(metric_triangles)
    def test_strictly_interior(self, t):
        """Test that both points have positive barycentric weights."""
        for point in brocard_points(t):
            assert all(w > 0 for w in to_barycentric(t, point).weights)


class TestConjugates:
    """Test isotomic and isogonal conjugation."""

    def test_isogonal_swaps_brocard_points(self, pythagorean):
        """Test that the two Brocard points are isogonal conjugates."""
        first, second = brocard_points(pythagorean)
        assert isogonal_conjugate(pythagorean, first) == second
        assert isogonal_conjugate(pythagorean, second) == first

    @settings(max_examples=300)
    @given(metric_triangles)
    def test_isogonal_swaps_on_random_triangles(self, t):
        """Test the swap on generated triangles."""
        first, second = brocard_points(t)
        assert isogonal_conjugate(t, first) == second
        assert isogonal_conjugate(t, second) == first

    def test_isogonal_of_symmedian_is_centroid(self, pythagorean):
        """Test the symmedian point against the centroid."""
        centroid = from_barycentric(pythagorean, Barycentrics.of(1, 1, 1))
        assert isogonal_conjugate(pythagorean, symmedian_point(pythagorean)) == centroid
        assert isotomic_conjugate(pythagorean, centroid) == centroid

    def test_isotomic_is_involution(self, pythagorean):
        """Test that applying the isotomic conjugate twice is the identity."""
        point = ProjPoint.of(1, 1)
        once = isotomic_conjugate(pythagorean, point)
        assert isotomic_conjugate(pythagorean, once) == point

    def test_point_on_side_line_rejected(self, pythagorean):
        """Test that a zero barycentric coordinate has no conjugate."""
        with pytest.raises(OnSideLine):
            isotomic_conjugate(pythagorean, ProjPoint.of(0, 0))
        with pytest.raises(OnSideLine):
            isogonal_conjugate(pythagorean, ProjPoint.of(1, 0))


class TestNeuberg:
    """Test the first Brocard triangle and Neuberg's tri-homology check."""

    def test_first_brocard_triangle_trihomological(self, pythagorean):
        """Test that the first Brocard triangle is tri-homological with its base."""
        fb = first_brocard_triangle(pythagorean)
        assert homology_report(pythagorean.to_triangle(), fb).is_trihomological

    def test_pythagorean_third_center(self, pythagorean):
        """Test the third center against the isotomic conjugate of the symmedian point."""
        report = neuberg_check(pythagorean)
        assert report.passed
        assert report.third_center == ProjPoint.of("675/769", "1600/769")

    def test_random_triangles(self):
        """Test the check on many seeded triangles."""
        checked = 0
        for t in _random_triangles(100):
            report = neuberg_check(t)
            if not report.precondition_met:
                continue
            checked += 1
            assert report.trihomological
            assert report.centers_match
        assert checked >= 90

    def test_precondition_unmet_reported(self, pythagorean, monkeypatch):
        """Test that a failed construction is reported rather than raised."""

        def degenerate(t):
            raise DegenerateConstruction("Brocard points coincide")

        monkeypatch.setattr(brocard, "first_brocard_triangle", degenerate)
        report = neuberg_check(pythagorean)
        assert not report.precondition_met
        assert not report.passed
        assert report.error == "Brocard points coincide"


class TestSimilarity:
    """Test that Brocard constructions follow rotations, scalings and translations."""

    @settings(max_examples=300)
    @given(metric_triangles, similarities)
    def test_brocard_points_follow_similarity(self, t, similarity):
        """Test that the images of the Brocard points are the moved triangle's."""
        moved = brocard_points(t.mapped(similarity))
        assert moved == tuple(apply_map(similarity, p) for p in brocard_points(t))

    @settings(max_examples=300)
    @given(metric_triangles, similarities)
    def test_first_brocard_triangle_follows_similarity(self, t, similarity):
        """Test first_brocard_triangle(M t) == M first_brocard_triangle(t)."""
        try:
            expected = apply_map(similarity, first_brocard_triangle(t))
        except DegeneracyError:
            assume(False)
        assert first_brocard_triangle(t.mapped(similarity)) == expected
