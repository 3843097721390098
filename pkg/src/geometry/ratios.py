"""
Signed Ratios and Menelaus Products

Ratio convention: both segments are measured from the point being placed,
ratio(X; U, V) = XU / XV. Under this convention a Menelaus transversal has
product +1, and the product of the three mode groups of a triangle pair is
identically 1.

All computation is affine: every point handed in must be finite.
"""

from dataclasses import dataclass
from fractions import Fraction

import structlog

from .errors import (
    DegeneracyError,
    DenominatorVanishes,
    GeneralPositionViolation,
    IdenticalLines,
    NotCollinear,
    PointAtInfinity,
    SideMembershipViolated,
)
from .kernel import ProjLine, ProjPoint, Triangle, collinear, incident, join, meet
from .perspectivity import Mode

logger = structlog.get_logger(__name__)


def affine_ratio(x: ProjPoint, u: ProjPoint, v: ProjPoint) -> Fraction:
    """
    Signed ratio XU / XV of directed segments on a common line.

    Lengths are compared along x when the line's direction has the larger
    (or equal) x component, along y otherwise.

    Raises:
        PointAtInfinity: If any point is at infinity
        NotCollinear: If the three points are not on one line
        DenominatorVanishes: If x equals v
    """
    for point in (x, u, v):
        if point.is_at_infinity:
            raise PointAtInfinity(f"{point} is at infinity")
    if x == v:
        raise DenominatorVanishes(f"Segment from {x} to {v} has zero length")
    if not collinear(x, u, v):
        raise NotCollinear(f"{x}, {u}, {v} are not collinear")
    if x == u:
        return Fraction(0)

    a, b, _ = join(x, v).coeffs
    # Direction of [a:b:c] is (b, -a).
    axis = 0 if abs(b) >= abs(a) else 1
    xs, us, vs = x.affine()[axis], u.affine()[axis], v.affine()[axis]
    return (us - xs) / (vs - xs)


def menelaus_product(
    t: Triangle, p_bc: ProjPoint, q_ca: ProjPoint, r_ab: ProjPoint
) -> Fraction:
    """
    ratio(p; B, C) * ratio(q; C, A) * ratio(r; A, B); equals 1 exactly when
    the three points are collinear.

    Raises:
        SideMembershipViolated: If a point is off its side line or on a vertex
    """
    a, b, c = t.vertices
    placements = ((p_bc, b, c, "BC"), (q_ca, c, a, "CA"), (r_ab, a, b, "AB"))
    product = Fraction(1)
    for point, start, end, side in placements:
        if point in (start, end):
            raise SideMembershipViolated(f"{point} sits on a vertex of side {side}")
        if not incident(point, join(start, end)):
            raise SideMembershipViolated(f"{point} is not on side {side}")
        product *= affine_ratio(point, start, end)
    return product


@dataclass(frozen=True)
class NineIntersections:
    """
    Meets of the sides of a first triangle with the sides of a second.

    Index 1 points lie on B1C1, index 2 on A1C1, index 3 on A1B1; the letter
    names the mode whose corresponding sides produced the point.
    """

    p1: ProjPoint
    q1: ProjPoint
    r1: ProjPoint
    p2: ProjPoint
    q2: ProjPoint
    r2: ProjPoint
    p3: ProjPoint
    q3: ProjPoint
    r3: ProjPoint

    def group(self, mode: Mode) -> tuple[ProjPoint, ProjPoint, ProjPoint]:
        """The (side BC, side CA, side AB) points of one mode"""
        return {
            Mode.P: (self.p1, self.p2, self.p3),
            Mode.Q: (self.q1, self.q2, self.q3),
            Mode.R: (self.r1, self.r2, self.r3),
        }[mode]


@dataclass(frozen=True)
class ModeProduct:
    mode: Mode
    value: Fraction


def _checked_meet(
    l: ProjLine, m: ProjLine, name: str, t1: Triangle  # noqa: E741
) -> ProjPoint:
    try:
        point = meet(l, m)
    except IdenticalLines as e:
        raise GeneralPositionViolation(f"{name}: the two lines coincide ({l})") from e
    if point.is_at_infinity:
        raise GeneralPositionViolation(f"{name}: the lines are parallel")
    if point in t1.vertices:
        raise GeneralPositionViolation(f"{name} = {point} is a vertex of the first triangle")
    return point


def nine_intersections(t1: Triangle, t2: Triangle) -> NineIntersections:
    """
    Raises:
        GeneralPositionViolation: If a required meet is at infinity, is a
            vertex of t1, or its two lines coincide
    """
    b1c1, a1c1, a1b1 = t1.side(0), t1.side(1), t1.side(2)
    b2c2, a2c2, a2b2 = t2.side(0), t2.side(1), t2.side(2)
    return NineIntersections(
        p1=_checked_meet(b1c1, b2c2, "P1", t1),
        q1=_checked_meet(b1c1, a2c2, "Q1", t1),
        r1=_checked_meet(b1c1, a2b2, "R1", t1),
        p2=_checked_meet(a1c1, a2c2, "P2", t1),
        q2=_checked_meet(a1c1, a2b2, "Q2", t1),
        r2=_checked_meet(a1c1, b2c2, "R2", t1),
        p3=_checked_meet(a1b1, a2b2, "P3", t1),
        q3=_checked_meet(a1b1, b2c2, "Q3", t1),
        r3=_checked_meet(a1b1, a2c2, "R3", t1),
    )


def _require_affine(t1: Triangle) -> None:
    if not t1.is_affine:
        raise PointAtInfinity(f"{t1} has a vertex at infinity")


def mode_product(n: NineIntersections, t1: Triangle, mode: Mode) -> ModeProduct:
    """One grouped factor, e.g. (P1B1/P1C1)(P2C1/P2A1)(P3A1/P3B1) for mode P"""
    _require_affine(t1)
    return ModeProduct(mode=mode, value=menelaus_product(t1, *n.group(mode)))


def grand_product(n: NineIntersections, t1: Triangle) -> Fraction:
    """Product of the three mode groups; identically 1 on valid input"""
    value = Fraction(1)
    for mode in Mode:
        value *= mode_product(n, t1, mode).value
    return value


def bihomology_criterion(t1: Triangle, t2: Triangle) -> bool:
    """
    True iff the Q group equals the reciprocal of the R group, which holds
    exactly when A1A2, B1B2, C1C2 are concurrent.

    Raises:
        GeneralPositionViolation: If the nine intersections are not all
            finite and off the vertices of t1
    """
    n = nine_intersections(t1, t2)
    try:
        q = mode_product(n, t1, Mode.Q).value
        r = mode_product(n, t1, Mode.R).value
    except DegeneracyError as e:
        raise GeneralPositionViolation(str(e)) from e
    verdict = q * r == 1
    logger.debug(
        "Bihomology criterion evaluated",
        geometry_event="bihomology_criterion",
        module=__name__,
        q_group=str(q),
        r_group=str(r),
        verdict=verdict,
    )
    return verdict


__all__ = [
    "ModeProduct",
    "NineIntersections",
    "affine_ratio",
    "bihomology_criterion",
    "grand_product",
    "menelaus_product",
    "mode_product",
    "nine_intersections",
]
