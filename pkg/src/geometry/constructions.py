"""
Tri-homological Constructions

Builders for triangles tri-homological with a given one, the cross-meet
(Veronese) triangle of a perspective pair, and the triplet bookkeeping that
ties their homology centers together.

For a base triangle ABC and points p, q the two partners are
    t1 = (Bp.Cq, Cp.Aq, Ap.Bq)
    t2 = (Bq.Cp, Cq.Ap, Bp.Aq)
so t2 is t1 with p and q exchanged. Both are perspective with ABC in the
Q and R modes (centers q, p for t1 and p, q for t2), hence in all three.
"""

from dataclasses import dataclass

import structlog

from .errors import (
    CoincidentVertexPair,
    DegenerateConstruction,
    DegenerateTriangle,
    DegeneracyError,
    IdenticalLines,
    IdenticalPoints,
    PreconditionUnmet,
    TheoremViolation,
)
from .kernel import (
    ProjLine,
    ProjPoint,
    Triangle,
    collinear,
    incident,
    join,
    line_through,
    meet,
)
from .perspectivity import (
    VERTEX_LABELS,
    Mode,
    homology_report,
    perspective_axis,
    perspector,
)

logger = structlog.get_logger(__name__)


def _meet_or_fail(l: ProjLine, m: ProjLine, name: str) -> ProjPoint:  # noqa: E741
    try:
        return meet(l, m)
    except IdenticalLines as e:
        raise DegenerateConstruction(f"{name}: both defining lines are {l}") from e


def _triangle_or_fail(points: tuple[ProjPoint, ProjPoint, ProjPoint], name: str) -> Triangle:
    try:
        return Triangle(*points)
    except DegenerateTriangle as e:
        raise DegenerateConstruction(f"{name} is degenerate: {e}") from e


def _check_pair_points(abc: Triangle, p: ProjPoint, q: ProjPoint) -> None:
    """Eager precondition sweep for the partner construction"""
    if p == q:
        raise DegenerateConstruction(f"p and q coincide at {p}")
    for name, point in (("p", p), ("q", q)):
        for label, side in zip(("BC", "CA", "AB"), abc.sides, strict=True):
            if incident(point, side):
                raise DegenerateConstruction(f"{name} = {point} lies on side line {label}")
    for label, vertex in zip(VERTEX_LABELS, abc.vertices, strict=True):
        if collinear(vertex, p, q):
            raise DegenerateConstruction(
                f"{label}, p and q are collinear, so {label}p = {label}q"
            )


def theorem8_triangles(abc: Triangle, p: ProjPoint, q: ProjPoint) -> tuple[Triangle, Triangle]:
    """
    The two partners of abc built from the points p and q.

    Raises:
        DegenerateConstruction: Naming the failed meet or precondition
    """
    _check_pair_points(abc, p, q)
    a, b, c = abc.vertices
    ap, bp, cp = join(a, p), join(b, p), join(c, p)
    aq, bq, cq = join(a, q), join(b, q), join(c, q)

    t1 = _triangle_or_fail(
        (
            _meet_or_fail(bp, cq, "A1 = Bp.Cq"),
            _meet_or_fail(cp, aq, "B1 = Cp.Aq"),
            _meet_or_fail(ap, bq, "C1 = Ap.Bq"),
        ),
        "t1",
    )
    t2 = _triangle_or_fail(
        (
            _meet_or_fail(bq, cp, "A2 = Bq.Cp"),
            _meet_or_fail(cq, ap, "B2 = Cq.Ap"),
            _meet_or_fail(bp, aq, "C2 = Bp.Aq"),
        ),
        "t2",
    )
    return t1, t2


def partner_from_modes(base: Triangle, centers: dict[Mode, ProjPoint]) -> Triangle:
    """
    The triangle perspective with `base` under two given cyclic modes with
    the given centers.

    Vertex j of the partner lies on the line joining the base vertex matched
    with it to that mode's center; two distinct cyclic modes give two such
    lines per vertex.

    Raises:
        DegenerateConstruction: If a line or meet collapses
        ValueError: Unless exactly two distinct modes are given
    """
    if len(centers) != 2:
        raise ValueError("Exactly two modes are needed")
    lines: list[list[ProjLine]] = [[], [], []]
    for mode, center in centers.items():
        inverse = mode.correspondence.inverse().perm
        for j in range(3):
            vertex = base.vertices[inverse[j]]
            try:
                lines[j].append(join(vertex, center))
            except IdenticalPoints as e:
                raise DegenerateConstruction(
                    f"Center of mode {mode.value} is the vertex {vertex}"
                ) from e
    vertices = tuple(
        _meet_or_fail(first, second, f"partner vertex {VERTEX_LABELS[j]}")
        for j, (first, second) in enumerate(lines)
    )
    return _triangle_or_fail(vertices, "partner")  # type: ignore[arg-type]


def third_perspector(abc: Triangle, t: Triangle) -> ProjPoint:
    """
    Concurrence point of AA', BB', CC' for an identity-mode partner.

    Raises:
        CoincidentVertexPair: If a vertex of t equals its partner in abc
        TheoremViolation: If the three joins do not concur
    """
    center = perspector(abc, t, Mode.P.correspondence)
    if center is None:
        logger.error(
            "Partner is not perspective under the identity",
            construct_event="third_perspector_missing",
            module=__name__,
            abc=str(abc),
            t=str(t),
        )
        raise TheoremViolation(f"AA', BB', CC' do not concur for {abc} and {t}")
    return center


def veronese(t1: Triangle, t2: Triangle) -> Triangle:
    """
    Cross-meet triangle (B1C2.B2C1, A1C2.A2C1, A1B2.A2B1) of a perspective
    pair, checked to be perspective with both parents on the pair's axis
    with collinear centers.

    Raises:
        DegenerateConstruction: If a parent vertex pair coincides or a meet
            collapses
        PreconditionUnmet: If t1, t2 are not perspective
        TheoremViolation: If a postcondition fails
    """
    for label, u, v in zip(VERTEX_LABELS, t1.vertices, t2.vertices, strict=True):
        if u == v:
            raise DegenerateConstruction(f"Vertices {label}1 and {label}2 coincide at {u}")

    center = perspector(t1, t2, Mode.P.correspondence)
    if center is None:
        raise PreconditionUnmet("The pair is not perspective under the identity")
    try:
        axis = perspective_axis(t1, t2, Mode.P.correspondence)
    except DegeneracyError as e:
        raise DegenerateConstruction(f"The pair has no usable axis: {e}") from e

    a1, b1, c1 = t1.vertices
    a2, b2, c2 = t2.vertices
    try:
        cross_lines = (
            (join(b1, c2), join(b2, c1)),
            (join(a1, c2), join(a2, c1)),
            (join(a1, b2), join(a2, b1)),
        )
    except IdenticalPoints as e:
        raise DegenerateConstruction(f"Cross join undefined: {e}") from e
    t3 = _triangle_or_fail(
        tuple(  # type: ignore[arg-type]
            _meet_or_fail(l, m, f"{label}3")
            for label, (l, m) in zip(VERTEX_LABELS, cross_lines, strict=True)
        ),
        "t3",
    )

    homologies = []
    for parent in (t1, t2):
        try:
            parent_center = perspector(parent, t3, Mode.P.correspondence)
            parent_axis = perspective_axis(parent, t3, Mode.P.correspondence)
        except DegeneracyError as e:
            raise DegenerateConstruction(f"t3 meets a parent degenerately: {e}") from e
        homologies.append((parent_center, parent_axis))

    centers = [center] + [c for c, _ in homologies]
    axes = [a for _, a in homologies]
    if any(c is None for c in centers) or any(a != axis for a in axes):
        logger.error(
            "Cross-meet triangle does not share the pair's axis",
            construct_event="veronese_violation",
            module=__name__,
            axis=str(axis),
            axes=[str(a) for a in axes],
        )
        raise TheoremViolation("t3 is not perspective with both parents on the common axis")
    if not collinear(*centers):  # type: ignore[arg-type]
        raise TheoremViolation("Centers of the cross-meet triplet are not collinear")

    logger.debug(
        "Cross-meet triangle built",
        construct_event="veronese_built",
        module=__name__,
        t3=str(t3),
        axis=str(axis),
    )
    return t3


@dataclass(frozen=True)
class TripletReport:
    """
    A base triangle with its two partners and the third centers of the
    three pairs: r for (abc, t1), r1 for (abc, t2), r2 for (t1, t2).
    """

    abc: Triangle
    p: ProjPoint
    q: ProjPoint
    t1: Triangle
    t2: Triangle
    r: ProjPoint
    r1: ProjPoint
    r2: ProjPoint
    centers_line: ProjLine
    pair_centers: dict[str, dict[Mode, ProjPoint]]


def _bookkeep(
    first: Triangle, second: Triangle, pair: str, expected: dict[Mode, ProjPoint]
) -> dict[Mode, ProjPoint]:
    report = homology_report(first, second)
    if not report.is_trihomological:
        raise TheoremViolation(f"Pair {pair} is not tri-homological")
    centers = report.centers
    for mode, point in expected.items():
        if centers[mode] != point:
            logger.error(
                "Mode center differs from the construction point",
                construct_event="mode_center_mismatch",
                module=__name__,
                pair=pair,
                mode=mode.value,
                expected=str(point),
                found=str(centers[mode]),
            )
            raise TheoremViolation(
                f"Pair {pair}: mode {mode.value} center is {centers[mode]}, expected {point}"
            )
    return centers


def trihomological_triplet(abc: Triangle, p: ProjPoint, q: ProjPoint) -> TripletReport:
    """
    Build both partners and verify that the three pairs are tri-homological
    with the expected mode centers and that the third centers are collinear.

    Raises:
        DegenerateConstruction: On any degenerate meet or coincident third
            centers
        TheoremViolation: If any verification fails
    """
    t1, t2 = theorem8_triangles(abc, p, q)
    try:
        r = third_perspector(abc, t1)
        r1 = third_perspector(abc, t2)
        r2 = third_perspector(t1, t2)
    except CoincidentVertexPair as e:
        raise DegenerateConstruction(str(e)) from e

    pair_centers = {
        "abc-t1": _bookkeep(abc, t1, "(abc, t1)", {Mode.P: r, Mode.Q: q, Mode.R: p}),
        "abc-t2": _bookkeep(abc, t2, "(abc, t2)", {Mode.P: r1, Mode.Q: p, Mode.R: q}),
        "t1-t2": _bookkeep(t1, t2, "(t1, t2)", {Mode.P: r2, Mode.Q: q, Mode.R: p}),
    }

    if not collinear(r, r1, r2):
        logger.error(
            "Third centers are not collinear",
            construct_event="triplet_violation",
            module=__name__,
            r=str(r),
            r1=str(r1),
            r2=str(r2),
        )
        raise TheoremViolation(f"Third centers {r}, {r1}, {r2} are not collinear")
    try:
        centers_line = line_through([r, r1, r2])
    except IdenticalPoints as e:
        raise DegenerateConstruction("All three third centers coincide") from e

    logger.info(
        "Tri-homological triplet verified",
        construct_event="triplet_verified",
        module=__name__,
        p=str(p),
        q=str(q),
        centers_line=str(centers_line),
    )
    return TripletReport(
        abc=abc,
        p=p,
        q=q,
        t1=t1,
        t2=t2,
        r=r,
        r1=r1,
        r2=r2,
        centers_line=centers_line,
        pair_centers=pair_centers,
    )


def iterate_triplet(report: TripletReport) -> TripletReport:
    """
    Next triplet from the points (p, r): its second partner must be the
    previous t1 relabelled as (B1, C1, A1).

    Raises:
        DegenerateConstruction: If the new construction degenerates
        TheoremViolation: If the relabelled partner differs
    """
    successor = trihomological_triplet(report.abc, report.p, report.r)
    if successor.t2 != report.t1.rotated():
        logger.error(
            "Iterated triplet does not reproduce the first partner",
            construct_event="iteration_violation",
            module=__name__,
            expected=str(report.t1.rotated()),
            found=str(successor.t2),
        )
        raise TheoremViolation("Iterated triplet lost the original partner")
    return successor


__all__ = [
    "TripletReport",
    "iterate_triplet",
    "partner_from_modes",
    "theorem8_triangles",
    "third_perspector",
    "trihomological_triplet",
    "veronese",
]
