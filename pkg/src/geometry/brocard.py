"""
Brocard Geometry

Metric layer over an affine triangle with rational vertices: squared side
lengths, barycentric coordinates, the two Brocard points, the symmedian
point, isotomic and isogonal conjugation, the first Brocard triangle and
Neuberg's tri-homology check.

Barycentric formulas, with a = |BC|, b = |CA|, c = |AB|:
    first Brocard point  (angles OAB = OBC = OCA)  (c²a² : a²b² : b²c²)
    second Brocard point (angles OBA = OCB = OAC)  (a²b² : b²c² : c²a²)
    symmedian point                                (a² : b² : c²)
"""

from dataclasses import dataclass
from fractions import Fraction

import structlog

from .constructions import theorem8_triangles, third_perspector
from .errors import DegenerateConstruction, DegeneracyError, OnSideLine
from .kernel import (
    ProjMap,
    ProjPoint,
    Scalar,
    Triangle,
    apply_map,
    canonical_triple,
    det3,
)
from .perspectivity import homology_report

logger = structlog.get_logger(__name__)

AffinePoint = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class AffineTriangle:
    """Triangle with finite rational vertices (x, y)"""

    a: AffinePoint
    b: AffinePoint
    c: AffinePoint

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            x, y = getattr(self, name)
            object.__setattr__(self, name, (Fraction(x), Fraction(y)))
        # Triangle() rejects collinear vertices.
        self.to_triangle()

    @classmethod
    def of(cls, *vertices: tuple[Scalar | str, Scalar | str]) -> "AffineTriangle":
        a, b, c = ((Fraction(x), Fraction(y)) for x, y in vertices)
        return cls(a, b, c)

    @classmethod
    def from_triangle(cls, t: Triangle) -> "AffineTriangle":
        a, b, c = (v.affine() for v in t.vertices)
        return cls(a, b, c)

    @property
    def homogeneous(self) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
        return tuple((x, y, Fraction(1)) for x, y in (self.a, self.b, self.c))

    def to_triangle(self) -> Triangle:
        return Triangle(*(ProjPoint(v) for v in self.homogeneous))  # type: ignore[arg-type]

    def mapped(self, t: ProjMap) -> "AffineTriangle":
        """Image under an affine map"""
        return AffineTriangle.from_triangle(apply_map(t, self.to_triangle()))


@dataclass(frozen=True)
class Barycentrics:
    """Barycentric weights (alpha : beta : gamma), canonical up to scale"""

    weights: tuple[int, int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", canonical_triple(self.weights))

    @classmethod
    def of(cls, alpha: Scalar, beta: Scalar, gamma: Scalar) -> "Barycentrics":
        return cls((alpha, beta, gamma))  # type: ignore[arg-type]


def squared_sides(t: AffineTriangle) -> tuple[Fraction, Fraction, Fraction]:
    """(a², b², c²) = (|BC|², |CA|², |AB|²)"""

    def dist2(u: AffinePoint, v: AffinePoint) -> Fraction:
        return (u[0] - v[0]) ** 2 + (u[1] - v[1]) ** 2

    return dist2(t.b, t.c), dist2(t.c, t.a), dist2(t.a, t.b)


def from_barycentric(t: AffineTriangle, w: Barycentrics) -> ProjPoint:
    """Homogenized alpha*A + beta*B + gamma*C; zero total mass gives a point at infinity"""
    coords = [
        sum((wi * v[k] for wi, v in zip(w.weights, t.homogeneous, strict=True)), Fraction(0))
        for k in range(3)
    ]
    return ProjPoint(tuple(coords))  # type: ignore[arg-type]


def to_barycentric(t: AffineTriangle, p: ProjPoint) -> Barycentrics:
    """Inverse of from_barycentric, by Cramer's rule"""
    a, b, c = t.homogeneous
    return Barycentrics.of(
        det3(p.coords, b, c),
        det3(a, p.coords, c),
        det3(a, b, p.coords),
    )


def brocard_points(t: AffineTriangle) -> tuple[ProjPoint, ProjPoint]:
    """(first, second) Brocard points"""
    a2, b2, c2 = squared_sides(t)
    first = from_barycentric(t, Barycentrics.of(c2 * a2, a2 * b2, b2 * c2))
    second = from_barycentric(t, Barycentrics.of(a2 * b2, b2 * c2, c2 * a2))
    return first, second


def symmedian_point(t: AffineTriangle) -> ProjPoint:
    return from_barycentric(t, Barycentrics.of(*squared_sides(t)))


def _nonzero_weights(t: AffineTriangle, p: ProjPoint) -> tuple[int, int, int]:
    weights = to_barycentric(t, p).weights
    if 0 in weights:
        raise OnSideLine(f"{p} lies on a side line; its conjugate is undefined")
    return weights


def isotomic_conjugate(t: AffineTriangle, p: ProjPoint) -> ProjPoint:
    """
    (alpha : beta : gamma) -> (1/alpha : 1/beta : 1/gamma)

    Raises:
        OnSideLine: If p has a zero barycentric coordinate
    """
    alpha, beta, gamma = _nonzero_weights(t, p)
    return from_barycentric(
        t, Barycentrics.of(Fraction(1, alpha), Fraction(1, beta), Fraction(1, gamma))
    )


def isogonal_conjugate(t: AffineTriangle, p: ProjPoint) -> ProjPoint:
    """
    (alpha : beta : gamma) -> (a²/alpha : b²/beta : c²/gamma)

    Raises:
        OnSideLine: If p has a zero barycentric coordinate
    """
    a2, b2, c2 = squared_sides(t)
    alpha, beta, gamma = _nonzero_weights(t, p)
    return from_barycentric(t, Barycentrics.of(a2 / alpha, b2 / beta, c2 / gamma))


def first_brocard_triangle(t: AffineTriangle) -> Triangle:
    """
    The first partner of the Brocard-point construction, with vertex A1 on
    B-first-point and C-second-point.

    Raises:
        DegenerateConstruction: If the Brocard points coincide (equilateral
            metric) or the construction collapses
    """
    first, second = brocard_points(t)
    if first == second:
        raise DegenerateConstruction(f"Brocard points coincide at {first}")
    t1, _ = theorem8_triangles(t.to_triangle(), first, second)
    return t1


@dataclass(frozen=True)
class NeubergReport:
    triangle: AffineTriangle
    precondition_met: bool
    error: str | None = None
    first_point: ProjPoint | None = None
    second_point: ProjPoint | None = None
    brocard_triangle: Triangle | None = None
    trihomological: bool = False
    third_center: ProjPoint | None = None
    expected_third_center: ProjPoint | None = None

    @property
    def centers_match(self) -> bool:
        return self.third_center is not None and self.third_center == self.expected_third_center

    @property
    def passed(self) -> bool:
        return self.precondition_met and self.trihomological and self.centers_match


def neuberg_check(t: AffineTriangle) -> NeubergReport:
    """
    Check that t and its first Brocard triangle are tri-homological and that
    their third center is the isotomic conjugate of the symmedian point.

    A construction failure is reported with precondition_met=False.
    """
    first, second = brocard_points(t)
    try:
        fb = first_brocard_triangle(t)
    except DegeneracyError as e:
        logger.info(
            "First Brocard triangle unavailable",
            brocard_event="neuberg_precondition_unmet",
            module=__name__,
            reason=str(e),
        )
        return NeubergReport(
            triangle=t,
            precondition_met=False,
            error=str(e),
            first_point=first,
            second_point=second,
        )

    tri = t.to_triangle()
    trihomological = homology_report(tri, fb).is_trihomological
    third = third_perspector(tri, fb)
    expected = isotomic_conjugate(t, symmedian_point(t))

    report = NeubergReport(
        triangle=t,
        precondition_met=True,
        first_point=first,
        second_point=second,
        brocard_triangle=fb,
        trihomological=trihomological,
        third_center=third,
        expected_third_center=expected,
    )
    logger.debug(
        "Neuberg check evaluated",
        brocard_event="neuberg_checked",
        module=__name__,
        trihomological=trihomological,
        centers_match=report.centers_match,
    )
    return report


__all__ = [
    "AffineTriangle",
    "Barycentrics",
    "NeubergReport",
    "brocard_points",
    "first_brocard_triangle",
    "from_barycentric",
    "isogonal_conjugate",
    "isotomic_conjugate",
    "neuberg_check",
    "squared_sides",
    "symmedian_point",
    "to_barycentric",
]
