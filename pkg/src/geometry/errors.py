"""
Geometry Error Hierarchy

Three families, mapped one-to-one onto command-line exit codes:
- DegeneracyError: an input or construction misses a precondition (exit 2)
- TheoremViolation: a machine check of a theorem failed (exit 1)
- InputError: scene or report I/O failed (exit 3)
"""


class GeometryError(Exception):
    """Root of every error raised by the toolkit"""


class DegeneracyError(GeometryError, ValueError):
    """A configuration does not satisfy the preconditions of an operation"""


class ZeroVector(DegeneracyError):
    """All three homogeneous coordinates are zero"""


class IdenticalPoints(DegeneracyError):
    """Two equal points do not determine a line"""


class IdenticalLines(DegeneracyError):
    """Two equal lines do not determine a point"""


class SingularMap(DegeneracyError):
    """A projective map with vanishing determinant"""


class DegenerateTriangle(DegeneracyError):
    """Three collinear vertices"""


class NotCollinear(DegeneracyError):
    pass


class PointAtInfinity(DegeneracyError):
    pass


class DenominatorVanishes(DegeneracyError):
    pass


class SideMembershipViolated(DegeneracyError):
    """A Menelaus point is not on its side line, or sits on a vertex"""


class GeneralPositionViolation(DegeneracyError):
    pass


class CoincidentVertexPair(DegeneracyError):
    """A vertex equals its corresponding vertex, so their join is undefined"""


class CoincidentSidePair(DegeneracyError):
    """A side equals its corresponding side, so their meet is undefined"""


class PreconditionUnmet(DegeneracyError):
    pass


class DegenerateConstruction(DegeneracyError):
    pass


class OnSideLine(DegeneracyError):
    """A point with a zero barycentric coordinate"""


class ExhaustedRetries(DegeneracyError):
    """A generator hit its retry budget without a valid sample"""


class TheoremViolation(GeometryError):
    """An exact check of a proven statement failed"""


class InputError(GeometryError, ValueError):
    pass


class ParseError(InputError):
    """Malformed scene input, located by line and column when known"""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownName(InputError):
    pass


class MalformedRational(InputError):
    pass


class EmptyViewport(InputError):
    pass


__all__ = [
    "CoincidentSidePair",
    "CoincidentVertexPair",
    "DegeneracyError",
    "DegenerateConstruction",
    "DegenerateTriangle",
    "DenominatorVanishes",
    "EmptyViewport",
    "ExhaustedRetries",
    "GeneralPositionViolation",
    "GeometryError",
    "IdenticalLines",
    "IdenticalPoints",
    "InputError",
    "MalformedRational",
    "NotCollinear",
    "OnSideLine",
    "ParseError",
    "PointAtInfinity",
    "PreconditionUnmet",
    "SideMembershipViolated",
    "SingularMap",
    "TheoremViolation",
    "UnknownName",
    "ZeroVector",
]
