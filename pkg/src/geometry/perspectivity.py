"""
Homology (Perspectivity) Detection

Perspective centers and axes of triangle pairs under a vertex correspondence,
the per-pair homology report, tri-homology, and exact checkers for the
three-triangle statements:

- common center        => the three pairwise axes are concurrent
- common axis          => the three pairwise centers are collinear
- collinear centers    => the three pairwise axes coincide

Every checker either returns its witness (point or line) or raises.
"""

from dataclasses import dataclass, field
from enum import Enum

import structlog

from .errors import (
    CoincidentSidePair,
    CoincidentVertexPair,
    PreconditionUnmet,
    TheoremViolation,
)
from .kernel import (
    ProjLine,
    ProjPoint,
    Triangle,
    collinear,
    concurrent,
    join,
    line_through,
    meet,
    point_on,
)

logger = structlog.get_logger(__name__)

VERTEX_LABELS = ("A", "B", "C")

_PERM_NAMES: dict[tuple[int, int, int], str] = {
    (0, 1, 2): "P",
    (1, 2, 0): "Q",
    (2, 0, 1): "R",
    (0, 2, 1): "swap_bc",
    (2, 1, 0): "swap_ca",
    (1, 0, 2): "swap_ab",
}


class Mode(Enum):
    """The three cyclic correspondences"""

    P = "P"  # A1->A2, B1->B2, C1->C2
    Q = "Q"  # A1->B2, B1->C2, C1->A2
    R = "R"  # A1->C2, B1->A2, C1->B2

    @property
    def correspondence(self) -> "Correspondence":
        return Correspondence.named(self.value)


@dataclass(frozen=True)
class Correspondence:
    """
    Bijection between vertex sets: vertex i of the first triangle is matched
    with vertex perm[i] of the second.
    """

    perm: tuple[int, int, int]

    def __post_init__(self) -> None:
        if sorted(self.perm) != [0, 1, 2]:
            raise ValueError(f"Not a permutation of (0, 1, 2): {self.perm}")

    @classmethod
    def named(cls, name: str) -> "Correspondence":
        for perm, perm_name in _PERM_NAMES.items():
            if perm_name == name:
                return cls(perm)
        raise ValueError(f"Unknown correspondence: {name!r}")

    @classmethod
    def cyclic(cls) -> tuple["Correspondence", ...]:
        return tuple(mode.correspondence for mode in Mode)

    @classmethod
    def all(cls) -> tuple["Correspondence", ...]:
        return tuple(cls(perm) for perm in _PERM_NAMES)

    @property
    def name(self) -> str:
        return _PERM_NAMES[self.perm]

    @property
    def mode(self) -> Mode | None:
        try:
            return Mode(self.name)
        except ValueError:
            return None

    @property
    def is_cyclic(self) -> bool:
        return self.mode is not None

    def inverse(self) -> "Correspondence":
        inv = [0, 0, 0]
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Correspondence((inv[0], inv[1], inv[2]))

    def partner(self, t2: Triangle) -> Triangle:
        """t2 relabelled so that its i-th vertex is the partner of vertex i"""
        return t2.relabel(self.perm)


def perspector(t1: Triangle, t2: Triangle, c: Correspondence) -> ProjPoint | None:
    """
    Common point of the three joins of corresponding vertices.

    Returns:
        The center (possibly at infinity), or None when the joins do not concur

    Raises:
        CoincidentVertexPair: If a vertex equals its partner
    """
    partner = c.partner(t2)
    joins = []
    for label, u, v in zip(VERTEX_LABELS, t1.vertices, partner.vertices, strict=True):
        if u == v:
            raise CoincidentVertexPair(
                f"Vertex {label} coincides with its partner {u} under mode {c.name}"
            )
        joins.append(join(u, v))
    if not concurrent(*joins):
        return None
    return point_on(joins)


def perspective_axis(t1: Triangle, t2: Triangle, c: Correspondence) -> ProjLine | None:
    """
    Line through the three meets of corresponding sides.

    Returns:
        The axis (possibly the line at infinity), or None when the meets are
        not collinear

    Raises:
        CoincidentSidePair: If a side equals its partner side
    """
    partner = c.partner(t2)
    meets = []
    for label, s1, s2 in zip(VERTEX_LABELS, t1.sides, partner.sides, strict=True):
        if s1 == s2:
            raise CoincidentSidePair(
                f"Side opposite {label} coincides with its partner {s1} under mode {c.name}"
            )
        meets.append(meet(s1, s2))
    if not collinear(*meets):
        return None
    return line_through(meets)


@dataclass(frozen=True)
class HomologyEntry:
    correspondence: Correspondence
    center: ProjPoint | None = None
    axis: ProjLine | None = None
    error: str | None = None

    @property
    def perspective(self) -> bool:
        return self.center is not None

    @property
    def degenerate(self) -> bool:
        return self.error is not None


@dataclass(frozen=True)
class HomologyReport:
    """Per-correspondence verdicts for one ordered pair of triangles"""

    t1: Triangle
    t2: Triangle
    entries: dict[str, HomologyEntry] = field(default_factory=dict)

    def entry(self, mode: Mode) -> HomologyEntry:
        return self.entries[mode.value]

    @property
    def perspective_modes(self) -> list[Mode]:
        return [mode for mode in Mode if self.entry(mode).perspective]

    @property
    def centers(self) -> dict[Mode, ProjPoint]:
        return {
            mode: center
            for mode in Mode
            if (center := self.entry(mode).center) is not None
        }

    @property
    def has_degenerate_mode(self) -> bool:
        return any(self.entry(mode).degenerate for mode in Mode)

    @property
    def is_trihomological(self) -> bool:
        return len(self.perspective_modes) == 3


def _evaluate(t1: Triangle, t2: Triangle, c: Correspondence) -> HomologyEntry:
    try:
        center = perspector(t1, t2, c)
        axis = perspective_axis(t1, t2, c)
    except (CoincidentVertexPair, CoincidentSidePair) as e:
        return HomologyEntry(correspondence=c, error=str(e))

    if (center is None) != (axis is None):
        logger.error(
            "Center and axis disagree",
            geometry_event="desargues_violation",
            module=__name__,
            mode=c.name,
            t1=str(t1),
            t2=str(t2),
            center=str(center),
            axis=str(axis),
        )
        raise TheoremViolation(
            f"Mode {c.name}: center {center} but axis {axis} for {t1} and {t2}"
        )
    return HomologyEntry(correspondence=c, center=center, axis=axis)


def homology_report(
    t1: Triangle, t2: Triangle, all_permutations: bool = False
) -> HomologyReport:
    """
    Evaluate every cyclic mode (all six correspondences on request).

    Degenerate modes are recorded in their entry, never raised. Center
    presence must match axis presence, and two perspective cyclic modes force
    the third; either failure raises TheoremViolation.
    """
    correspondences = Correspondence.all() if all_permutations else Correspondence.cyclic()
    entries = {c.name: _evaluate(t1, t2, c) for c in correspondences}
    report = HomologyReport(t1=t1, t2=t2, entries=entries)

    perspective = report.perspective_modes
    if len(perspective) == 2:
        missing = next(mode for mode in Mode if mode not in perspective)
        if not report.entry(missing).degenerate:
            logger.error(
                "Pair perspective in exactly two cyclic modes",
                geometry_event="bihomology_without_trihomology",
                module=__name__,
                t1=str(t1),
                t2=str(t2),
                missing_mode=missing.value,
            )
            raise TheoremViolation(
                f"{t1} and {t2} are perspective in two cyclic modes but not in {missing.value}"
            )
    return report


def is_trihomological(t1: Triangle, t2: Triangle) -> bool:
    return homology_report(t1, t2).is_trihomological


def _identity_homology(t1: Triangle, t2: Triangle, pair: str) -> tuple[ProjPoint, ProjLine]:
    """Center and axis of a pair that must be perspective under the identity"""
    entry = _evaluate(t1, t2, Mode.P.correspondence)
    if entry.degenerate:
        raise PreconditionUnmet(f"Pair {pair} is degenerate: {entry.error}")
    if entry.center is None or entry.axis is None:
        raise PreconditionUnmet(f"Pair {pair} is not perspective")
    return entry.center, entry.axis


def _pairwise(
    t1: Triangle, t2: Triangle, t3: Triangle
) -> list[tuple[ProjPoint, ProjLine]]:
    return [
        _identity_homology(t1, t2, "(t1, t2)"),
        _identity_homology(t2, t3, "(t2, t3)"),
        _identity_homology(t3, t1, "(t3, t1)"),
    ]


def theorem1_check(t1: Triangle, t2: Triangle, t3: Triangle) -> ProjPoint:
    """
    Three triangles pairwise perspective from one common center: return the
    common point of their three axes.

    Raises:
        PreconditionUnmet: If a pair is not perspective, the centers differ,
            or all three axes coincide
        TheoremViolation: If the axes fail to concur
    """
    homologies = _pairwise(t1, t2, t3)
    centers = {center for center, _ in homologies}
    if len(centers) != 1:
        raise PreconditionUnmet(
            "Centers differ: " + ", ".join(str(c) for c, _ in homologies)
        )

    axes = [axis for _, axis in homologies]
    if not concurrent(*axes):
        logger.error(
            "Axes of a common-center family do not concur",
            geometry_event="common_center_violation",
            module=__name__,
            axes=[str(a) for a in axes],
        )
        raise TheoremViolation("Axes of a common-center family are not concurrent")
    if len(set(axes)) == 1:
        raise PreconditionUnmet("All three axes coincide; concurrence point undetermined")

    point = point_on(axes)
    logger.debug(
        "Common-center axes concur",
        geometry_event="common_center_verified",
        module=__name__,
        center=str(next(iter(centers))),
        point=str(point),
    )
    return point


def theorem2_check(t1: Triangle, t2: Triangle, t3: Triangle) -> ProjLine:
    """
    Three triangles pairwise perspective with one common axis: return the
    line through their three centers.

    The centers are the ones shown collinear; the axes are equal by
    hypothesis.

    Raises:
        PreconditionUnmet: If a pair is not perspective, the axes differ, or
            two centers coincide
        TheoremViolation: If the centers are not collinear
    """
    homologies = _pairwise(t1, t2, t3)
    axes = {axis for _, axis in homologies}
    if len(axes) != 1:
        raise PreconditionUnmet(
            "Axes differ: " + ", ".join(str(a) for _, a in homologies)
        )

    centers = [center for center, _ in homologies]
    if len(set(centers)) != 3:
        raise PreconditionUnmet("Two pairwise centers coincide")
    if not collinear(*centers):
        logger.error(
            "Centers of a common-axis family are not collinear",
            geometry_event="common_axis_violation",
            module=__name__,
            centers=[str(c) for c in centers],
        )
        raise TheoremViolation("Centers of a common-axis family are not collinear")

    return line_through(centers)


def theorem3_check(t1: Triangle, t2: Triangle, t3: Triangle) -> ProjLine:
    """
    Three triangles pairwise perspective with collinear centers: return
    their shared axis.

    Raises:
        PreconditionUnmet: If a pair is not perspective, two centers
            coincide, or the centers are not collinear
        TheoremViolation: If the three axes are not one line
    """
    homologies = _pairwise(t1, t2, t3)
    centers = [center for center, _ in homologies]
    if len(set(centers)) != 3:
        raise PreconditionUnmet("Two pairwise centers coincide")
    if not collinear(*centers):
        raise PreconditionUnmet(
            "Centers are not collinear: " + ", ".join(str(c) for c in centers)
        )

    axes = {axis for _, axis in homologies}
    if len(axes) != 1:
        logger.error(
            "Collinear-center family has distinct axes",
            geometry_event="collinear_centers_violation",
            module=__name__,
            axes=[str(a) for _, a in homologies],
        )
        raise TheoremViolation("Axes of a collinear-center family differ")
    return axes.pop()


__all__ = [
    "VERTEX_LABELS",
    "Correspondence",
    "HomologyEntry",
    "HomologyReport",
    "Mode",
    "homology_report",
    "is_trihomological",
    "perspective_axis",
    "perspector",
    "theorem1_check",
    "theorem2_check",
    "theorem3_check",
]
