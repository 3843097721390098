"""Tests for signed ratios, Menelaus products and the nine-intersection identities."""

from fractions import Fraction

import pytest
from hypothesis import given, reject

from src.explorer.generators import gen_perspective_pair, trial_rng
from src.geometry.errors import (
    DegeneracyError,
    DenominatorVanishes,
    GeneralPositionViolation,
    NotCollinear,
    PointAtInfinity,
    SideMembershipViolated,
)
from src.geometry.kernel import ProjPoint, Triangle
from src.geometry.perspectivity import Mode
from src.geometry.ratios import (
    affine_ratio,
    bihomology_criterion,
    grand_product,
    menelaus_product,
    mode_product,
    nine_intersections,
)
from tests import strategies


@pytest.fixture
def right_triangle() -> Triangle:
    return Triangle.from_coords((0, 0, 1), (4, 0, 1), (0, 4, 1))


class TestAffineRatio:
    """Test the signed ratio XU / XV."""

    def test_opposite_sides(self):
        """Test a negative ratio when U and V are on opposite sides of X."""
        x, u, v = ProjPoint.of(0, 0), ProjPoint.of(2, 0), ProjPoint.of(-1, 0)
        assert affine_ratio(x, u, v) == -2

    def test_vertical_line(self):
        """Test ratios measured along y."""
        x, u, v = ProjPoint.of(0, 0), ProjPoint.of(0, 3), ProjPoint.of(0, 1)
        assert affine_ratio(x, u, v) == 3

    def test_x_equals_u(self):
        """Test a zero numerator."""
        x = ProjPoint.of(1, 1)
        assert affine_ratio(x, x, ProjPoint.of(2, 2)) == 0

    def test_errors(self):
        """Test every rejected configuration."""
        origin, one = ProjPoint.of(0, 0), ProjPoint.of(1, 0)
        with pytest.raises(DenominatorVanishes):
            affine_ratio(origin, one, origin)
        with pytest.raises(NotCollinear):
            affine_ratio(origin, one, ProjPoint.of(0, 1))
        with pytest.raises(PointAtInfinity):
            affine_ratio(origin, one, ProjPoint((1, 0, 0)))


class TestMenelausProduct:
    """Test the three-factor product on the sides of a triangle."""

    def test_transversal_gives_one(self, right_triangle):
        """Test the line 2x + y = 2 against the sides of the triangle."""
        product = menelaus_product(
            right_triangle, ProjPoint.of(-2, 6), ProjPoint.of(0, 2), ProjPoint.of(1, 0)
        )
        assert product == 1

    def test_midpoints_give_minus_one(self, right_triangle):
        """Test that the three midpoints, which are not collinear, do not give 1."""
        product = menelaus_product(
            right_triangle, ProjPoint.of(2, 2), ProjPoint.of(0, 2), ProjPoint.of(2, 0)
        )
        assert product == -1

    def test_point_on_vertex_rejected(self, right_triangle):
        """Test that a point may not sit on a vertex of its side."""
        with pytest.raises(SideMembershipViolated):
            menelaus_product(
                right_triangle, ProjPoint.of(4, 0), ProjPoint.of(0, 2), ProjPoint.of(1, 0)
            )

    def test_point_off_side_rejected(self, right_triangle):
        """Test that a point must lie on its side line."""
        with pytest.raises(SideMembershipViolated):
            menelaus_product(
                right_triangle, ProjPoint.of(1, 1), ProjPoint.of(0, 2), ProjPoint.of(1, 0)
            )


class TestNineIntersections:
    """Test the side-by-side meets of a pair and their grouped products."""

    def test_known_pair(self, non_perspective_pair):
        """Test the nine meets of a fixed pair."""
        n = nine_intersections(*non_perspective_pair)
        assert n.p1 == ProjPoint.of(6, -5)
        assert n.q1 == ProjPoint.of("2/3", "1/3")
        assert n.r1 == ProjPoint.of(-10, 11)
        assert n.group(Mode.P) == (n.p1, n.p2, n.p3)
        assert n.p2 == ProjPoint.of(0, -1)
        assert n.r3 == ProjPoint.of("1/2", 0)

    def test_grand_product_is_one(self, non_perspective_pair):
        """Test the product of the three mode groups on a fixed pair."""
        t1, t2 = non_perspective_pair
        n = nine_intersections(t1, t2)
        assert grand_product(n, t1) == 1
        assert mode_product(n, t1, Mode.P).value != 1

    @given(strategies.affine_triangles, strategies.affine_triangles)
    def test_grand_product_identity(self, t1, t2):
        """Test that the grand product is identically 1."""
        try:
            n = nine_intersections(t1, t2)
        except GeneralPositionViolation:
            reject()
        assert grand_product(n, t1) == Fraction(1)

    def test_parallel_sides_rejected(self):
        """Test that a meet at infinity violates general position."""
        t1 = Triangle.from_coords((0, 0, 1), (4, 0, 1), (0, 4, 1))
        t2 = Triangle.from_coords((1, 1, 1), (9, 1, 1), (1, 9, 1))
        with pytest.raises(GeneralPositionViolation):
            nine_intersections(t1, t2)

    def test_reference_triangle_side_at_infinity(self, reference_triangle, affine_triangle):
        """Test that a side on the line at infinity violates general position."""
        with pytest.raises(GeneralPositionViolation):
            nine_intersections(reference_triangle, affine_triangle)

    def test_vertex_at_infinity_rejected(self, reference_triangle, non_perspective_pair):
        """Test that mode products need a finite first triangle."""
        n = nine_intersections(*non_perspective_pair)
        with pytest.raises(PointAtInfinity):
            mode_product(n, reference_triangle, Mode.P)


class TestBihomologyCriterion:
    """Test the Q/R group criterion against vertex-join concurrence."""

    def test_non_perspective_pair(self, non_perspective_pair):
        """Test that the criterion is false when the joins do not concur."""
        assert bihomology_criterion(*non_perspective_pair) is False

    def test_perspective_pairs(self):
        """Test that the criterion holds on seeded perspective pairs."""
        evaluated = 0
        for trial in range(20):
            t1, t2 = gen_perspective_pair(trial_rng(11, trial), bound=20, affine=True)
            try:
                assert bihomology_criterion(t1, t2) is True
            except DegeneracyError:
                continue
            evaluated += 1
        assert evaluated >= 10
