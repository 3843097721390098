"""
Seeded Configuration Generators

Random points, triangles and maps with integer homogeneous coordinates in
[-bound, bound], plus family generators whose theorem preconditions hold
exactly by construction. Degenerate samples are redrawn up to a fixed retry
budget, after which ExhaustedRetries is raised.

Every generator draws from an explicit random.Random; per-trial streams come
from trial_rng(master_seed, trial) so results never depend on scheduling.
"""

import hashlib
import random
from collections.abc import Callable

import structlog

from ..geometry.errors import (
    DegeneracyError,
    ExhaustedRetries,
    PointAtInfinity,
    PreconditionUnmet,
)
from ..geometry.kernel import (
    ProjLine,
    ProjMap,
    ProjPoint,
    Scalar,
    Triangle,
    cross,
    join,
    meet,
)
from ..geometry.perspectivity import Mode, perspective_axis, perspector

logger = structlog.get_logger(__name__)

DEFAULT_BOUND = 50
RETRY_BUDGET = 64

TriangleFamily = tuple[Triangle, Triangle, Triangle]


def derive_seed(master_seed: int, trial: int) -> int:
    """64-bit seed for one trial, from SHA-256 of (master seed, trial index)"""
    digest = hashlib.sha256(f"{master_seed}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def trial_rng(master_seed: int, trial: int) -> random.Random:
    return random.Random(derive_seed(master_seed, trial))


def with_retries[T](build: Callable[[], T], what: str, budget: int = RETRY_BUDGET) -> T:
    """
    Call `build` until it stops raising DegeneracyError.

    Raises:
        ExhaustedRetries: After `budget` degenerate attempts
    """
    last: DegeneracyError | None = None
    for attempt in range(budget):
        try:
            return build()
        except DegeneracyError as e:
            last = e
            logger.debug(
                "Degenerate sample, resampling",
                explore_event="resample",
                module=__name__,
                what=what,
                attempt=attempt,
                reason=str(e),
            )
    raise ExhaustedRetries(f"No valid {what} after {budget} attempts (last: {last})")


def _check_bound(bound: int) -> None:
    if bound < 2:
        raise ValueError(f"Coordinate bound must be >= 2, got {bound}")


def _coord(rng: random.Random, bound: int) -> int:
    return rng.randint(-bound, bound)


def _nonzero(rng: random.Random, bound: int) -> int:
    while (value := _coord(rng, bound)) == 0:
        pass
    return value


def _combine(lam: Scalar, u: ProjPoint, mu: Scalar, v: ProjPoint) -> ProjPoint:
    """The point lam*u + mu*v on the line uv"""
    return ProjPoint(
        tuple(lam * a + mu * b for a, b in zip(u.coords, v.coords, strict=True))  # type: ignore[arg-type]
    )


def _cyclic_pairs(family: TriangleFamily) -> list[tuple[Triangle, Triangle]]:
    t1, t2, t3 = family
    return [(t1, t2), (t2, t3), (t3, t1)]


def _identity_homology(t1: Triangle, t2: Triangle) -> tuple[ProjPoint, ProjLine]:
    identity = Mode.P.correspondence
    center = perspector(t1, t2, identity)
    axis = perspective_axis(t1, t2, identity)
    if center is None or axis is None:
        raise PreconditionUnmet("Sampled pair is not perspective")
    return center, axis


def gen_point(
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    affine: bool = False,
    budget: int = RETRY_BUDGET,
) -> ProjPoint:
    """Random point; affine points have z = 1"""
    _check_bound(bound)

    def build() -> ProjPoint:
        if affine:
            return ProjPoint.of(_coord(rng, bound), _coord(rng, bound))
        return ProjPoint((_coord(rng, bound), _coord(rng, bound), _coord(rng, bound)))

    return with_retries(build, "point", budget)


def gen_line(rng: random.Random, bound: int = DEFAULT_BOUND, budget: int = RETRY_BUDGET) -> ProjLine:
    _check_bound(bound)
    return with_retries(
        lambda: ProjLine((_coord(rng, bound), _coord(rng, bound), _coord(rng, bound))),
        "line",
        budget,
    )


def gen_triangle(
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    affine: bool = False,
    budget: int = RETRY_BUDGET,
) -> Triangle:
    _check_bound(bound)
    return with_retries(
        lambda: Triangle(*(gen_point(rng, bound, affine, budget) for _ in range(3))),
        "triangle",
        budget,
    )


def gen_projmap(rng: random.Random, bound: int = DEFAULT_BOUND, budget: int = RETRY_BUDGET) -> ProjMap:
    """Random invertible integer matrix"""
    _check_bound(bound)
    return with_retries(
        lambda: ProjMap(
            tuple(  # type: ignore[arg-type]
                tuple(_coord(rng, bound) for _ in range(3)) for _ in range(3)
            )
        ),
        "projective map",
        budget,
    )


def gen_affine_map(
    rng: random.Random, bound: int = DEFAULT_BOUND, budget: int = RETRY_BUDGET
) -> ProjMap:
    _check_bound(bound)
    return with_retries(
        lambda: ProjMap.affine(*(_coord(rng, bound) for _ in range(6))),
        "affine map",
        budget,
    )


def gen_perspective_pair(
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    center: ProjPoint | None = None,
    affine: bool = False,
    budget: int = RETRY_BUDGET,
) -> tuple[Triangle, Triangle]:
    """
    A triangle and an image perspective with it from `center` (random when
    omitted). Each image vertex uses its own weights, so the pair is
    generally not homothetic.
    """
    _check_bound(bound)

    def build() -> tuple[Triangle, Triangle]:
        o = center if center is not None else gen_point(rng, bound, affine, budget)
        t1 = gen_triangle(rng, bound, affine, budget)
        t2 = Triangle(
            *(_combine(_nonzero(rng, bound), o, _nonzero(rng, bound), v) for v in t1.vertices)
        )
        if affine and not t2.is_affine:
            raise PointAtInfinity("Image vertex at infinity")
        found, _ = _identity_homology(t1, t2)
        if found != o:
            raise PreconditionUnmet(f"Pair is perspective from {found}, not {o}")
        return t1, t2

    return with_retries(build, "perspective pair", budget)


def gen_common_center_family(
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    center: ProjPoint | None = None,
    budget: int = RETRY_BUDGET,
) -> TriangleFamily:
    """
    Three triangles pairwise perspective from one center O, their vertices
    placed on three fixed lines through O. The three pairwise axes are
    checked to be distinct lines.
    """
    _check_bound(bound)

    def build() -> TriangleFamily:
        o = center if center is not None else gen_point(rng, bound, budget=budget)
        directions = [gen_point(rng, bound, budget=budget) for _ in range(3)]
        family: TriangleFamily = tuple(  # type: ignore[assignment]
            Triangle(
                *(_combine(_nonzero(rng, bound), o, _nonzero(rng, bound), d) for d in directions)
            )
            for _ in range(3)
        )
        axes = []
        for first, second in _cyclic_pairs(family):
            found, axis = _identity_homology(first, second)
            if found != o:
                raise PreconditionUnmet(f"Pair is perspective from {found}, not {o}")
            axes.append(axis)
        if len(set(axes)) == 1:
            raise PreconditionUnmet("All three axes coincide")
        return family

    return with_retries(build, "common-center family", budget)


def gen_common_axis_family(
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    axis: ProjLine | None = None,
    budget: int = RETRY_BUDGET,
) -> TriangleFamily:
    """
    Dual of the common-center family: three anchor points on the axis d, and
    each triangle's sides BC, CA, AB pass through the first, second and third
    anchor. The three pairwise centers are checked to be distinct.
    """
    _check_bound(bound)

    def build() -> TriangleFamily:
        d = axis if axis is not None else gen_line(rng, bound, budget)
        anchors = [
            ProjPoint(cross(d.coeffs, gen_point(rng, bound, budget=budget).coords))  # type: ignore[arg-type]
            for _ in range(3)
        ]
        if len(set(anchors)) != 3:
            raise PreconditionUnmet("Anchor points on the axis coincide")
        triangles = []
        for _ in range(3):
            a, b, c = (join(anchor, gen_point(rng, bound, budget=budget)) for anchor in anchors)
            triangles.append(Triangle(meet(b, c), meet(c, a), meet(a, b)))
        family: TriangleFamily = (triangles[0], triangles[1], triangles[2])

        centers = []
        for first, second in _cyclic_pairs(family):
            found_center, found_axis = _identity_homology(first, second)
            if found_axis != d:
                raise PreconditionUnmet(f"Pair has axis {found_axis}, not {d}")
            centers.append(found_center)
        if len(set(centers)) != 3:
            raise PreconditionUnmet("Two pairwise centers coincide")
        return family

    return with_retries(build, "common-axis family", budget)


def gen_pairwise_perspective_family(
    rng: random.Random,
    bound: int = DEFAULT_BOUND,
    centers: tuple[ProjPoint, ProjPoint, ProjPoint] | None = None,
    budget: int = RETRY_BUDGET,
) -> TriangleFamily:
    """
    Three triangles with prescribed pairwise centers (o12, o13, o23).

    Each vertex of the first triangle is random, its partner in the second
    lies on the line to o12, and the third vertex closes the two lines
    through o13 and o23. Collinear centers give a collinear-center family.
    """
    _check_bound(bound)

    def build() -> TriangleFamily:
        o12, o13, o23 = (
            centers
            if centers is not None
            else tuple(gen_point(rng, bound, budget=budget) for _ in range(3))
        )
        columns: tuple[list[ProjPoint], list[ProjPoint], list[ProjPoint]] = ([], [], [])
        for _ in range(3):
            v1 = gen_point(rng, bound, budget=budget)
            v2 = _combine(_nonzero(rng, bound), o12, _nonzero(rng, bound), v1)
            v3 = meet(join(o13, v1), join(o23, v2))
            for column, vertex in zip(columns, (v1, v2, v3), strict=True):
                column.append(vertex)
        family: TriangleFamily = tuple(Triangle(*column) for column in columns)  # type: ignore[assignment]

        for (first, second), expected in zip(_cyclic_pairs(family), (o12, o23, o13), strict=True):
            found, _ = _identity_homology(first, second)
            if found != expected:
                raise PreconditionUnmet(f"Pair is perspective from {found}, not {expected}")
        return family

    return with_retries(build, "pairwise-perspective family", budget)


__all__ = [
    "DEFAULT_BOUND",
    "RETRY_BUDGET",
    "TriangleFamily",
    "derive_seed",
    "gen_affine_map",
    "gen_common_axis_family",
    "gen_common_center_family",
    "gen_line",
    "gen_pairwise_perspective_family",
    "gen_perspective_pair",
    "gen_point",
    "gen_projmap",
    "gen_triangle",
    "trial_rng",
    "with_retries",
]
