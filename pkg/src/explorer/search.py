"""
Randomized Searches for the Two Open Questions

Open problem 1: if (T1, T2) and (T2, T3) are both tri-homological, is
(T1, T3)?

Open problem 2: if T1, T2, T3 are pairwise tri-homological and the three
pairs share two homology centers, are the three remaining centers
collinear? "Share" is read two ways and both are reported:
    points  the two points common to the three center sets
    modes   two cyclic modes whose centers agree across the cyclically
            ordered pairs (T1, T2), (T2, T3), (T3, T1)

Each trial draws from its own seeded stream, so the report does not depend
on trial order or worker count. Degenerate samples are redrawn up to the
retry budget, then the trial is counted as degenerate.
"""

import random
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any

import structlog

from ..cli.scene import SceneFile, scene_to_dict
from ..geometry.constructions import partner_from_modes, trihomological_triplet
from ..geometry.errors import ExhaustedRetries, TheoremViolation
from ..geometry.kernel import ProjPoint, Triangle, collinear
from ..geometry.perspectivity import Mode, homology_report
from .generators import (
    DEFAULT_BOUND,
    RETRY_BUDGET,
    TriangleFamily,
    gen_point,
    gen_triangle,
    trial_rng,
    with_retries,
)

logger = structlog.get_logger(__name__)

SUPPORTING = "supporting"
COUNTEREXAMPLE = "counterexample"
NOT_APPLICABLE = "not_applicable"

VALID = "valid"
DEGENERATE = "degenerate"
PRECONDITION_UNMET = "precondition_unmet"

OP1_QUESTION = "t1-t3-trihomological"
OP2_INTERPRETATIONS = ("points", "modes")
OP2_FAMILIES = ("theorem8", "mode-assignment")

DEFAULT_MAX_RECORDED = 100

_METHODOLOGY = {
    "op1": (
        "T2 is a random triangle; T1 and T3 are the first partners of the "
        "tri-homological triplets around T2 built from two independent random "
        "point pairs. The question is whether (T1, T3) is tri-homological."
    ),
    "theorem8": (
        "Triplet (ABC, t1, t2) of the two-point partner construction with "
        "random ABC, p, q. The pairs share the centers p and q by "
        "construction, so the remaining centers are collinear by theorem; "
        "this family serves as a control."
    ),
    "mode-assignment": (
        "T2 is a random triangle with random centers p, q. T1 and T3 are the "
        "partners of T2 for two distinct random assignments of p and q to "
        "ordered pairs of cyclic modes. Trials where (T3, T1) is not "
        "tri-homological fail the precondition."
    ),
}


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    status: str
    verdicts: dict[str, str] = field(default_factory=dict)
    scene: dict[str, Any] | None = None
    witnesses: dict[str, dict[str, Any]] = field(default_factory=dict)
    reason: str | None = None


@dataclass(frozen=True)
class Counterexample:
    trial: int
    question: str
    scene: dict[str, Any]
    witness: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "trial": self.trial,
            "question": self.question,
            "scene": self.scene,
            "witness": self.witness,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Counterexample":
        return cls(
            trial=int(data["trial"]),
            question=str(data["question"]),
            scene=data["scene"],
            witness=data.get("witness", {}),
        )


@dataclass
class Tally:
    supporting: int = 0
    counterexamples: int = 0
    not_applicable: int = 0

    def add(self, verdict: str) -> None:
        if verdict == SUPPORTING:
            self.supporting += 1
        elif verdict == COUNTEREXAMPLE:
            self.counterexamples += 1
        else:
            self.not_applicable += 1

    def to_dict(self) -> dict[str, int]:
        return {
            "supporting": self.supporting,
            "counterexamples": self.counterexamples,
            "not_applicable": self.not_applicable,
        }


@dataclass
class SearchReport:
    problem: str
    family: str
    methodology: str
    seed: int
    bound: int
    trials_attempted: int
    trials_valid: int = 0
    degenerate: int = 0
    precondition_unmet: int = 0
    tallies: dict[str, Tally] = field(default_factory=dict)
    counterexamples: list[Counterexample] = field(default_factory=list)
    max_recorded: int = DEFAULT_MAX_RECORDED
    elapsed_seconds: float = 0.0

    @property
    def counterexample_count(self) -> int:
        return sum(tally.counterexamples for tally in self.tallies.values())

    @property
    def found_counterexample(self) -> bool:
        return self.counterexample_count > 0

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "problem": self.problem,
            "family": self.family,
            "methodology": self.methodology,
            "seed": self.seed,
            "bound": self.bound,
            "trials_attempted": self.trials_attempted,
            "trials_valid": self.trials_valid,
            "degenerate": self.degenerate,
            "precondition_unmet": self.precondition_unmet,
            "tallies": {name: tally.to_dict() for name, tally in self.tallies.items()},
            "max_recorded": self.max_recorded,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }
        if include_timing:
            data["elapsed_seconds"] = round(self.elapsed_seconds, 3)
        return data


def _scene(triangles: dict[str, Triangle], points: dict[str, ProjPoint]) -> dict[str, Any]:
    return scene_to_dict(SceneFile(points=dict(points), triangles=dict(triangles)))


def _cyclic_pairs(family: TriangleFamily) -> list[tuple[Triangle, Triangle]]:
    t1, t2, t3 = family
    return [(t1, t2), (t2, t3), (t3, t1)]


def _op1_trial(trial: int, seed: int, bound: int, budget: int) -> TrialOutcome:
    rng = trial_rng(seed, trial)

    def build() -> tuple[TriangleFamily, dict[str, ProjPoint]]:
        t2 = gen_triangle(rng, bound, budget=budget)
        p1, q1, p3, q3 = (gen_point(rng, bound, budget=budget) for _ in range(4))
        t1 = trihomological_triplet(t2, p1, q1).t1
        t3 = trihomological_triplet(t2, p3, q3).t1
        return (t1, t2, t3), {"p1": p1, "q1": q1, "p3": p3, "q3": q3}

    try:
        family, points = with_retries(build, "open problem 1 configuration", budget)
    except ExhaustedRetries as e:
        return TrialOutcome(trial=trial, status=DEGENERATE, reason=str(e))

    t1, t2, t3 = family
    scene = _scene({"T1": t1, "T2": t2, "T3": t3}, points)
    report = homology_report(t1, t3)
    if report.is_trihomological:
        verdict = SUPPORTING
    elif report.has_degenerate_mode:
        return TrialOutcome(
            trial=trial, status=DEGENERATE, scene=scene, reason="(T1, T3) has a degenerate mode"
        )
    else:
        verdict = COUNTEREXAMPLE
    witness = {
        "perspective_modes": [mode.value for mode in report.perspective_modes],
        "centers": {mode.value: str(point) for mode, point in report.centers.items()},
    }
    return TrialOutcome(
        trial=trial,
        status=VALID,
        verdicts={OP1_QUESTION: verdict},
        scene=scene,
        witnesses={OP1_QUESTION: witness},
    )


def _theorem8_family(
    rng: random.Random, bound: int, budget: int
) -> tuple[TriangleFamily, dict[str, ProjPoint]]:
    abc = gen_triangle(rng, bound, budget=budget)
    p, q = gen_point(rng, bound, budget=budget), gen_point(rng, bound, budget=budget)
    report = trihomological_triplet(abc, p, q)
    return (abc, report.t1, report.t2), {"p": p, "q": q}


_ASSIGNMENTS = [(first, second) for first in Mode for second in Mode if first != second]


def _mode_assignment_family(
    rng: random.Random, bound: int, budget: int
) -> tuple[TriangleFamily, dict[str, ProjPoint]]:
    base = gen_triangle(rng, bound, budget=budget)
    p, q = gen_point(rng, bound, budget=budget), gen_point(rng, bound, budget=budget)
    first, second = rng.sample(_ASSIGNMENTS, 2)
    t1 = partner_from_modes(base, {first[0]: p, first[1]: q})
    t3 = partner_from_modes(base, {second[0]: p, second[1]: q})
    return (t1, base, t3), {"p": p, "q": q}


_FAMILIES: dict[
    str, Callable[[random.Random, int, int], tuple[TriangleFamily, dict[str, ProjPoint]]]
] = {
    "theorem8": _theorem8_family,
    "mode-assignment": _mode_assignment_family,
}


def shared_point_verdict(centers: list[dict[Mode, ProjPoint]]) -> tuple[str, dict[str, Any]]:
    """Verdict when the shared centers are read as points"""
    sets = [set(c.values()) for c in centers]
    common = sets[0] & sets[1] & sets[2]
    rest = [s - common for s in sets]
    witness: dict[str, Any] = {"common": sorted(str(p) for p in common)}
    if len(common) != 2 or any(len(r) != 1 for r in rest):
        return NOT_APPLICABLE, witness
    remaining = [next(iter(r)) for r in rest]
    witness["remaining"] = [str(p) for p in remaining]
    return (SUPPORTING if collinear(*remaining) else COUNTEREXAMPLE), witness


def shared_mode_verdict(centers: list[dict[Mode, ProjPoint]]) -> tuple[str, dict[str, Any]]:
    """Verdict when the shared centers are read as matched modes"""
    shared = [m for m in Mode if centers[0][m] == centers[1][m] == centers[2][m]]
    witness: dict[str, Any] = {"shared_modes": [m.value for m in shared]}
    if len(shared) != 2:
        return NOT_APPLICABLE, witness
    other = next(m for m in Mode if m not in shared)
    remaining = [c[other] for c in centers]
    witness["remaining_mode"] = other.value
    witness["remaining"] = [str(p) for p in remaining]
    return (SUPPORTING if collinear(*remaining) else COUNTEREXAMPLE), witness


def _op2_trial(trial: int, seed: int, bound: int, budget: int, family: str) -> TrialOutcome:
    rng = trial_rng(seed, trial)
    builder = _FAMILIES[family]
    try:
        triangles, points = with_retries(
            lambda: builder(rng, bound, budget), f"{family} configuration", budget
        )
    except ExhaustedRetries as e:
        return TrialOutcome(trial=trial, status=DEGENERATE, reason=str(e))

    t1, t2, t3 = triangles
    scene = _scene({"T1": t1, "T2": t2, "T3": t3}, points)
    reports = [homology_report(a, b) for a, b in _cyclic_pairs(triangles)]
    if not all(report.is_trihomological for report in reports):
        return TrialOutcome(
            trial=trial,
            status=PRECONDITION_UNMET,
            scene=scene,
            reason="The triangles are not pairwise tri-homological",
        )

    centers = [report.centers for report in reports]
    verdicts: dict[str, str] = {}
    witnesses: dict[str, dict[str, Any]] = {}
    for name, judge in (("points", shared_point_verdict), ("modes", shared_mode_verdict)):
        verdicts[name], witnesses[name] = judge(centers)
    return TrialOutcome(
        trial=trial, status=VALID, verdicts=verdicts, scene=scene, witnesses=witnesses
    )


def _run_trials(
    worker: Callable[[int], TrialOutcome], trials: int, workers: int
) -> list[TrialOutcome]:
    if workers <= 1:
        return [worker(i) for i in range(trials)]
    chunksize = max(1, trials // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(worker, range(trials), chunksize=chunksize))
    return sorted(outcomes, key=lambda outcome: outcome.trial)


def _aggregate(report: SearchReport, outcomes: list[TrialOutcome], questions: tuple[str, ...]) -> None:
    report.tallies = {question: Tally() for question in questions}
    for outcome in outcomes:
        if outcome.status == DEGENERATE:
            report.degenerate += 1
            continue
        if outcome.status == PRECONDITION_UNMET:
            report.precondition_unmet += 1
            continue
        report.trials_valid += 1
        for question in questions:
            verdict = outcome.verdicts.get(question, NOT_APPLICABLE)
            report.tallies[question].add(verdict)
            if (
                verdict == COUNTEREXAMPLE
                and outcome.scene is not None
                and len(report.counterexamples) < report.max_recorded
            ):
                report.counterexamples.append(
                    Counterexample(
                        trial=outcome.trial,
                        question=question,
                        scene=outcome.scene,
                        witness=outcome.witnesses.get(question, {}),
                    )
                )


def _confirm_counterexamples(report: SearchReport) -> None:
    # Imported here; verify depends on this module's data types
    from .verify import reverify_counterexample

    for counterexample in report.counterexamples:
        if not reverify_counterexample(report.problem, counterexample):
            logger.error(
                "Counterexample failed independent re-verification",
                explore_event="false_counterexample",
                module=__name__,
                problem=report.problem,
                trial=counterexample.trial,
                question=counterexample.question,
            )
            raise TheoremViolation(
                f"Trial {counterexample.trial} of {report.problem} does not re-verify"
            )


def _check_arguments(trials: int, bound: int, workers: int) -> None:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")


def open_problem_1_search(
    trials: int,
    seed: int,
    bound: int = DEFAULT_BOUND,
    workers: int = 1,
    retry_budget: int = RETRY_BUDGET,
    max_recorded: int = DEFAULT_MAX_RECORDED,
) -> SearchReport:
    """
    Search for T1, T2, T3 with (T1, T2) and (T2, T3) tri-homological but
    (T1, T3) not.

    Raises:
        ValueError: If trials < 1, bound < 2 or workers < 1
    """
    _check_arguments(trials, bound, workers)
    started = time.perf_counter()
    logger.info(
        "Open problem 1 search started",
        explore_event="search_started",
        module=__name__,
        trials=trials,
        seed=seed,
        bound=bound,
        workers=workers,
    )

    worker = partial(_op1_trial, seed=seed, bound=bound, budget=retry_budget)
    outcomes = _run_trials(worker, trials, workers)
    report = SearchReport(
        problem="op1",
        family="triplet-partners",
        methodology=_METHODOLOGY["op1"],
        seed=seed,
        bound=bound,
        trials_attempted=trials,
        max_recorded=max_recorded,
    )
    _aggregate(report, outcomes, (OP1_QUESTION,))
    _confirm_counterexamples(report)
    report.elapsed_seconds = time.perf_counter() - started

    logger.info(
        "Open problem 1 search finished",
        explore_event="search_finished",
        module=__name__,
        trials_valid=report.trials_valid,
        counterexamples=report.counterexample_count,
        degenerate=report.degenerate,
        elapsed_seconds=report.elapsed_seconds,
    )
    return report


def open_problem_2_search(
    trials: int,
    seed: int,
    bound: int = DEFAULT_BOUND,
    family: str = "theorem8",
    workers: int = 1,
    retry_budget: int = RETRY_BUDGET,
    max_recorded: int = DEFAULT_MAX_RECORDED,
) -> SearchReport:
    """
    Search for pairwise tri-homological triplets sharing two centers whose
    remaining centers are not collinear, under both readings of "share".

    Raises:
        ValueError: If the family is unknown, trials < 1, bound < 2 or
            workers < 1
    """
    _check_arguments(trials, bound, workers)
    if family not in _FAMILIES:
        raise ValueError(f"Unknown family {family!r}; choose from {', '.join(OP2_FAMILIES)}")
    started = time.perf_counter()
    logger.info(
        "Open problem 2 search started",
        explore_event="search_started",
        module=__name__,
        trials=trials,
        seed=seed,
        bound=bound,
        family=family,
        workers=workers,
    )

    worker = partial(_op2_trial, seed=seed, bound=bound, budget=retry_budget, family=family)
    outcomes = _run_trials(worker, trials, workers)
    report = SearchReport(
        problem="op2",
        family=family,
        methodology=_METHODOLOGY[family],
        seed=seed,
        bound=bound,
        trials_attempted=trials,
        max_recorded=max_recorded,
    )
    _aggregate(report, outcomes, OP2_INTERPRETATIONS)
    _confirm_counterexamples(report)
    report.elapsed_seconds = time.perf_counter() - started

    logger.info(
        "Open problem 2 search finished",
        explore_event="search_finished",
        module=__name__,
        family=family,
        trials_valid=report.trials_valid,
        counterexamples=report.counterexample_count,
        degenerate=report.degenerate,
        elapsed_seconds=report.elapsed_seconds,
    )
    return report


__all__ = [
    "COUNTEREXAMPLE",
    "NOT_APPLICABLE",
    "OP1_QUESTION",
    "OP2_FAMILIES",
    "OP2_INTERPRETATIONS",
    "SUPPORTING",
    "Counterexample",
    "SearchReport",
    "Tally",
    "TrialOutcome",
    "open_problem_1_search",
    "open_problem_2_search",
    "shared_mode_verdict",
    "shared_point_verdict",
]
