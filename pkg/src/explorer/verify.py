"""
Independent Re-verification

Re-checks serialized counterexamples from their scene form using only the
kernel predicates (join, meet, concurrency, collinearity). Nothing here goes
through the homology report or the constructions, so a bug there cannot
confirm its own findings.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import structlog

from ..cli.scene import scene_from_dict
from ..geometry.errors import GeometryError, InputError
from ..geometry.kernel import ProjPoint, Triangle, collinear, concurrent, join, meet
from .search import OP1_QUESTION, Counterexample

logger = structlog.get_logger(__name__)

_CYCLIC_PERMS: dict[str, tuple[int, int, int]] = {
    "P": (0, 1, 2),
    "Q": (1, 2, 0),
    "R": (2, 0, 1),
}


class _Coincident(Exception):
    pass


def _center(t1: Triangle, t2: Triangle, perm: tuple[int, int, int]) -> ProjPoint | None:
    """Common point of the joins vertex i -> vertex perm[i], or None"""
    joins = []
    for i in range(3):
        u, v = t1.vertices[i], t2.vertices[perm[i]]
        if u == v:
            raise _Coincident
        joins.append(join(u, v))
    if not concurrent(*joins):
        return None
    for first in range(3):
        for second in range(first + 1, 3):
            if joins[first] != joins[second]:
                return meet(joins[first], joins[second])
    return None


def _centers(t1: Triangle, t2: Triangle) -> dict[str, ProjPoint | None]:
    return {name: _center(t1, t2, perm) for name, perm in _CYCLIC_PERMS.items()}


def _triangles(scene: dict[str, Any]) -> tuple[Triangle, Triangle, Triangle]:
    triangles = scene_from_dict(scene).triangles
    try:
        return triangles["T1"], triangles["T2"], triangles["T3"]
    except KeyError as e:
        raise InputError(f"Counterexample scene lacks triangle {e}") from e


def _confirm_op1(t1: Triangle, t3: Triangle) -> bool:
    """(T1, T3) is not perspective in some cyclic mode and no vertex pair coincides"""
    centers = _centers(t1, t3)
    return any(center is None for center in centers.values())


def _confirm_op2(family: tuple[Triangle, Triangle, Triangle], question: str) -> bool:
    t1, t2, t3 = family
    pairs = [(t1, t2), (t2, t3), (t3, t1)]
    centers = [_centers(a, b) for a, b in pairs]
    if any(c is None for pair in centers for c in pair.values()):
        return False
    complete: list[dict[str, ProjPoint]] = centers  # type: ignore[assignment]

    if question == "points":
        sets = [set(pair.values()) for pair in complete]
        common = sets[0] & sets[1] & sets[2]
        rest = [s - common for s in sets]
        if len(common) != 2 or any(len(r) != 1 for r in rest):
            return False
        a, b, c = (next(iter(r)) for r in rest)
        return not collinear(a, b, c)

    if question == "modes":
        shared = [m for m in _CYCLIC_PERMS if complete[0][m] == complete[1][m] == complete[2][m]]
        if len(shared) != 2:
            return False
        other = next(m for m in _CYCLIC_PERMS if m not in shared)
        return not collinear(*(pair[other] for pair in complete))

    raise InputError(f"Unknown question {question!r}")


def reverify_counterexample(problem: str, counterexample: Counterexample) -> bool:
    """
    True when the stored configuration really contradicts the question.

    Raises:
        InputError: If the scene is malformed or the problem is unknown
    """
    family = _triangles(counterexample.scene)
    try:
        if problem == "op1":
            if counterexample.question != OP1_QUESTION:
                raise InputError(f"Unknown question {counterexample.question!r}")
            return _confirm_op1(family[0], family[2])
        if problem == "op2":
            return _confirm_op2(family, counterexample.question)
    except _Coincident:
        return False
    raise InputError(f"Unknown problem {problem!r}")


@dataclass
class VerificationSummary:
    problem: str
    checked: int = 0
    confirmed: int = 0
    failed_trials: list[int] = field(default_factory=list)

    @property
    def all_confirmed(self) -> bool:
        return not self.failed_trials

    def to_dict(self) -> dict[str, Any]:
        return {
            "problem": self.problem,
            "checked": self.checked,
            "confirmed": self.confirmed,
            "failed_trials": self.failed_trials,
        }


def verify_report(data: dict[str, Any]) -> VerificationSummary:
    """
    Re-verify every counterexample of a decoded report.

    Raises:
        InputError: If the report is malformed
    """
    try:
        problem = str(data["problem"])
        records = [Counterexample.from_dict(item) for item in data["counterexamples"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed search report: {e}") from e

    summary = VerificationSummary(problem=problem)
    for record in records:
        summary.checked += 1
        try:
            confirmed = reverify_counterexample(problem, record)
        except GeometryError as e:
            if isinstance(e, InputError):
                raise
            confirmed = False
        if confirmed:
            summary.confirmed += 1
        else:
            summary.failed_trials.append(record.trial)

    logger.info(
        "Report re-verified",
        explore_event="report_verified",
        module=__name__,
        problem=problem,
        checked=summary.checked,
        confirmed=summary.confirmed,
    )
    return summary


def verify_report_file(path: Path) -> VerificationSummary:
    """
    Raises:
        InputError: If the file cannot be read or decoded
    """
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"Cannot read report {path}: {e}") from e
    return verify_report(data)


__all__ = [
    "VerificationSummary",
    "reverify_counterexample",
    "verify_report",
    "verify_report_file",
]
