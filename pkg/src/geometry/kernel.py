"""
Exact Projective Kernel

Homogeneous points and lines over the integers, with the join/meet duality,
incidence predicates and projective maps that every other module builds on.

- Rational inputs are cleared once, at canonicalization
- Canonical form: gcd-reduced integers, first nonzero entry positive
- Points at infinity (z = 0) are ordinary values, never errors
- No rounding anywhere; coefficient growth is unbounded
"""

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import overload

from .errors import (
    DegenerateTriangle,
    IdenticalLines,
    IdenticalPoints,
    PointAtInfinity,
    SingularMap,
    ZeroVector,
)

# Every scalar in the core is an exact fraction.
Rational = Fraction
Scalar = int | Fraction
Triple = tuple[int, int, int]


def as_rational(value: Scalar | str) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction"""
    return Fraction(value)


def canonical_triple(raw: Sequence[Scalar]) -> Triple:
    """
    Reduce a homogeneous triple to its unique integer representative.

    Clears denominators, divides by the gcd and makes the first nonzero
    entry positive.

    Raises:
        ZeroVector: If all three entries are zero
    """
    if len(raw) != 3:
        raise ValueError(f"Homogeneous triple needs 3 entries, got {len(raw)}")
    values = [Fraction(v) for v in raw]
    if not any(values):
        raise ZeroVector("The zero triple has no projective class")

    scale = math.lcm(*(v.denominator for v in values))
    ints = [(v * scale).numerator for v in values]
    divisor = math.gcd(*ints)
    ints = [i // divisor for i in ints]

    leading = next(i for i in ints if i != 0)
    if leading < 0:
        ints = [-i for i in ints]
    return (ints[0], ints[1], ints[2])


def cross(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple[Scalar, Scalar, Scalar]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(r0: Sequence[Scalar], r1: Sequence[Scalar], r2: Sequence[Scalar]) -> Scalar:
    return dot(r0, cross(r1, r2))


@dataclass(frozen=True)
class ProjPoint:
    """
    A point [x:y:z] of the projective plane in canonical integer form.

    Construction canonicalizes, so equality and hashing are exact
    projective equality.
    """

    coords: Triple

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", canonical_triple(self.coords))

    @classmethod
    def of(cls, x: Scalar | str, y: Scalar | str, z: Scalar | str = 1) -> "ProjPoint":
        return cls((as_rational(x), as_rational(y), as_rational(z)))  # type: ignore[arg-type]

    @property
    def x(self) -> int:
        return self.coords[0]

    @property
    def y(self) -> int:
        return self.coords[1]

    @property
    def z(self) -> int:
        return self.coords[2]

    @property
    def is_at_infinity(self) -> bool:
        return self.coords[2] == 0

    def affine(self) -> tuple[Fraction, Fraction]:
        """Dehomogenize to z = 1"""
        if self.is_at_infinity:
            raise PointAtInfinity(f"{self} has no affine coordinates")
        return Fraction(self.x, self.z), Fraction(self.y, self.z)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __str__(self) -> str:
        return "({}:{}:{})".format(*self.coords)


@dataclass(frozen=True)
class ProjLine:
    """A line [u:v:w] (the locus ux + vy + wz = 0) in canonical integer form"""

    coeffs: Triple

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", canonical_triple(self.coeffs))

    @classmethod
    def of(cls, u: Scalar | str, v: Scalar | str, w: Scalar | str) -> "ProjLine":
        return cls((as_rational(u), as_rational(v), as_rational(w)))  # type: ignore[arg-type]

    @property
    def is_at_infinity(self) -> bool:
        return self.coeffs[0] == 0 and self.coeffs[1] == 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __str__(self) -> str:
        return "[{}:{}:{}]".format(*self.coeffs)


LINE_AT_INFINITY = ProjLine((0, 0, 1))


def canonicalize(raw: Sequence[Scalar]) -> ProjPoint:
    """
    Build the canonical ProjPoint of a rational triple.

    Raises:
        ZeroVector: If all three entries are zero
    """
    return ProjPoint(tuple(raw))  # type: ignore[arg-type]


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """
    Line through two distinct points.

    Raises:
        IdenticalPoints: If p equals q
    """
    if p == q:
        raise IdenticalPoints(f"Cannot join {p} with itself")
    return ProjLine(cross(p.coords, q.coords))  # type: ignore[arg-type]


def meet(l: ProjLine, m: ProjLine) -> ProjPoint:  # noqa: E741
    """
    Common point of two distinct lines; parallel lines meet at infinity.

    Raises:
        IdenticalLines: If l equals m
    """
    if l == m:
        raise IdenticalLines(f"Cannot meet {l} with itself")
    return ProjPoint(cross(l.coeffs, m.coeffs))  # type: ignore[arg-type]


def incident(p: ProjPoint, l: ProjLine) -> bool:  # noqa: E741
    return dot(p.coords, l.coeffs) == 0


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return det3(p.coords, q.coords, r.coords) == 0


def concurrent(l: ProjLine, m: ProjLine, n: ProjLine) -> bool:
    return det3(l.coeffs, m.coeffs, n.coeffs) == 0


def line_through(points: Sequence[ProjPoint]) -> ProjLine:
    """
    Line through a collinear sequence, joined on its first distinct pair.

    Raises:
        IdenticalPoints: If every point in the sequence is the same
    """
    first = points[0]
    for other in points[1:]:
        if other != first:
            return join(first, other)
    raise IdenticalPoints("All points coincide; the line is undetermined")


def point_on(lines: Sequence[ProjLine]) -> ProjPoint:
    """Dual of line_through: meet a concurrent sequence on its first distinct pair"""
    first = lines[0]
    for other in lines[1:]:
        if other != first:
            return meet(first, other)
    raise IdenticalLines("All lines coincide; the point is undetermined")


@dataclass(frozen=True)
class Triangle:
    """
    Ordered triple of non-collinear points.

    The nonzero determinant of the vertex coordinates is kept as the
    non-degeneracy certificate.
    """

    a: ProjPoint
    b: ProjPoint
    c: ProjPoint

    def __post_init__(self) -> None:
        if collinear(self.a, self.b, self.c):
            raise DegenerateTriangle(
                f"Vertices {self.a}, {self.b}, {self.c} are collinear"
            )

    @classmethod
    def from_coords(cls, *vertices: Sequence[Scalar]) -> "Triangle":
        a, b, c = (canonicalize(v) for v in vertices)
        return cls(a, b, c)

    @property
    def vertices(self) -> tuple[ProjPoint, ProjPoint, ProjPoint]:
        return (self.a, self.b, self.c)

    @property
    def certificate(self) -> int:
        return int(det3(self.a.coords, self.b.coords, self.c.coords))

    def side(self, index: int) -> ProjLine:
        """Side opposite vertex `index`: 0 -> BC, 1 -> CA, 2 -> AB"""
        v = self.vertices
        return join(v[(index + 1) % 3], v[(index + 2) % 3])

    @property
    def sides(self) -> tuple[ProjLine, ProjLine, ProjLine]:
        return (self.side(0), self.side(1), self.side(2))

    def relabel(self, perm: Sequence[int]) -> "Triangle":
        """Triangle whose i-th vertex is this triangle's vertex perm[i]"""
        v = self.vertices
        return Triangle(v[perm[0]], v[perm[1]], v[perm[2]])

    def rotated(self) -> "Triangle":
        return self.relabel((1, 2, 0))

    @property
    def is_affine(self) -> bool:
        return not any(v.is_at_infinity for v in self.vertices)

    def __iter__(self) -> Iterator[ProjPoint]:
        return iter(self.vertices)

    def __str__(self) -> str:
        return "<{} {} {}>".format(*self.vertices)


Matrix = tuple[
    tuple[Fraction, Fraction, Fraction],
    tuple[Fraction, Fraction, Fraction],
    tuple[Fraction, Fraction, Fraction],
]


@dataclass(frozen=True)
class ProjMap:
    """
    Invertible 3x3 rational matrix acting on points; lines transform by the
    cofactor matrix (the inverse transpose up to scale).
    """

    m: Matrix

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.m)
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise ValueError("A projective map needs a 3x3 matrix")
        object.__setattr__(self, "m", rows)
        if self.determinant == 0:
            raise SingularMap("Matrix is singular")

    @classmethod
    def identity(cls) -> "ProjMap":
        return cls.diagonal(1, 1, 1)

    @classmethod
    def diagonal(cls, a: Scalar, b: Scalar, c: Scalar) -> "ProjMap":
        return cls(((a, 0, 0), (0, b, 0), (0, 0, c)))  # type: ignore[arg-type]

    @classmethod
    def affine(
        cls, a: Scalar, b: Scalar, tx: Scalar, c: Scalar, d: Scalar, ty: Scalar
    ) -> "ProjMap":
        """(x, y) -> (ax + by + tx, cx + dy + ty)"""
        return cls(((a, b, tx), (c, d, ty), (0, 0, 1)))  # type: ignore[arg-type]

    @property
    def determinant(self) -> Fraction:
        return Fraction(det3(*self.m))

    @property
    def is_affine(self) -> bool:
        return self.m[2][0] == 0 and self.m[2][1] == 0

    @cached_property
    def cofactors(self) -> Matrix:
        c0, c1, c2 = zip(*self.m, strict=True)
        # Adjugate rows are cross products of columns; cofactors are its transpose.
        adjugate = (cross(c1, c2), cross(c2, c0), cross(c0, c1))
        return tuple(zip(*adjugate, strict=True))  # type: ignore[return-value]

    def compose(self, other: "ProjMap") -> "ProjMap":
        """self after other"""
        cols = list(zip(*other.m, strict=True))
        return ProjMap(
            tuple(tuple(dot(row, col) for col in cols) for row in self.m)  # type: ignore[arg-type]
        )


@overload
def apply_map(t: ProjMap, element: ProjPoint) -> ProjPoint: ...
@overload
def apply_map(t: ProjMap, element: ProjLine) -> ProjLine: ...
@overload
def apply_map(t: ProjMap, element: Triangle) -> Triangle: ...


def apply_map(
    t: ProjMap, element: ProjPoint | ProjLine | Triangle
) -> ProjPoint | ProjLine | Triangle:
    """
    Image of a point, a line (contragredient action) or a triangle.

    Incidence is preserved: incident(p, l) iff incident(t.p, t.l).
    """
    if isinstance(element, ProjPoint):
        return ProjPoint(tuple(dot(row, element.coords) for row in t.m))  # type: ignore[arg-type]
    if isinstance(element, ProjLine):
        return ProjLine(
            tuple(dot(row, element.coeffs) for row in t.cofactors)  # type: ignore[arg-type]
        )
    if isinstance(element, Triangle):
        return Triangle(*(apply_map(t, v) for v in element.vertices))
    raise TypeError(f"Cannot map {type(element).__name__}")


__all__ = [
    "LINE_AT_INFINITY",
    "ProjLine",
    "ProjMap",
    "ProjPoint",
    "Rational",
    "Triangle",
    "apply_map",
    "as_rational",
    "canonical_triple",
    "canonicalize",
    "collinear",
    "concurrent",
    "cross",
    "det3",
    "dot",
    "incident",
    "join",
    "line_through",
    "meet",
    "point_on",
]
