"""
Subcommand Handlers

Each handler takes the parsed arguments and the configuration manager and
returns a CommandResult: the exit code plus the report to print. Errors are
left to propagate; src.app maps them to exit codes:

    0  verified / constructed
    1  property fails, counterexample found, theorem violation
    2  precondition unmet or degenerate input
    3  input error (bad scene, unreadable file, bad configuration)
"""

import argparse
import hashlib
import sys
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import structlog

from ..config.config_manager import ConfigManager
from ..config.user_config import ExplorerSettings
from ..explorer.search import open_problem_1_search, open_problem_2_search
from ..explorer.verify import verify_report_file
from ..geometry.brocard import (
    AffineTriangle,
    brocard_points,
    first_brocard_triangle,
    neuberg_check,
    symmedian_point,
)
from ..geometry.constructions import (
    iterate_triplet,
    theorem8_triangles,
    trihomological_triplet,
    veronese,
)
from ..geometry.errors import InputError
from ..geometry.kernel import ProjLine, ProjPoint, Triangle, collinear, line_through
from ..geometry.perspectivity import (
    Mode,
    homology_report,
    perspective_axis,
    perspector,
    theorem1_check,
    theorem2_check,
    theorem3_check,
)
from ..geometry.ratios import (
    bihomology_criterion,
    mode_product,
    nine_intersections,
)
from .render import render_svg
from .scene import FigureElement, FigureSpec, SceneFile, parse_scene_document, scene_to_dict

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DEGENERATE = 2
EXIT_INPUT = 3


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    report: dict[str, Any]
    # Written to --output instead of the report (SVG for render)
    artifact: str | None = None


Handler = Callable[[argparse.Namespace, ConfigManager], CommandResult]


def read_input(source: str | None) -> str:
    """
    Raises:
        InputError: If no input was named or it cannot be read
    """
    if source is None:
        raise InputError("This command needs --input (a scene file, or - for stdin)")
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read {source}: {e}") from e


def load_scene(args: argparse.Namespace) -> SceneFile:
    return parse_scene_document(read_input(args.input))


def _figure_scene(
    points: dict[str, ProjPoint],
    triangles: dict[str, Triangle],
    lines: dict[str, ProjLine] | None = None,
    vertex_names: dict[str, tuple[str, str, str]] | None = None,
    classes: dict[str, str] | None = None,
) -> dict[str, Any]:
    """Scene section for a report, with a figure listing every element"""
    lines = lines or {}
    classes = classes or {}
    elements = [
        FigureElement(name=name, css_class=classes.get(name, f"triangle-{i % 3 + 1}"))
        for i, name in enumerate(triangles)
    ]
    elements += [FigureElement(name=name, css_class=classes.get(name, "line")) for name in lines]
    elements += [FigureElement(name=name, css_class="point") for name in points]
    scene = SceneFile(
        points=points,
        lines=lines,
        triangles=triangles,
        vertex_names=vertex_names or {},
        figure=FigureSpec(elements=tuple(elements)),
    )
    return scene_to_dict(scene)


def _labelled_base(
    abc: Triangle,
) -> tuple[dict[str, ProjPoint], dict[str, Triangle], dict[str, tuple[str, str, str]]]:
    points = dict(zip(("A", "B", "C"), abc.vertices, strict=True))
    return points, {"ABC": abc}, {"ABC": ("A", "B", "C")}


def _construction_points(scene: SceneFile, abc: Triangle) -> tuple[ProjPoint, ProjPoint]:
    """The first two scene points that are not vertices of the base triangle"""
    free = [point for point in scene.points.values() if point not in abc.vertices]
    if len(free) < 2:
        raise InputError(f"Scene needs two points besides the triangle vertices, found {len(free)}")
    return free[0], free[1]


# check


def check_pair(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    t1, t2 = load_scene(args).require_triangles(2)
    report = homology_report(t1, t2, all_permutations=args.all_permutations)
    entries = {
        name: {
            "perspective": entry.perspective,
            "center": entry.center,
            "axis": entry.axis,
            "degenerate": entry.degenerate,
            "error": entry.error,
        }
        for name, entry in report.entries.items()
    }
    trihomological = report.is_trihomological
    return CommandResult(
        exit_code=EXIT_OK if trihomological else EXIT_FAILED,
        report={
            "status": "trihomological" if trihomological else "not_trihomological",
            "t1": t1,
            "t2": t2,
            "perspective_modes": [mode.value for mode in report.perspective_modes],
            "entries": entries,
        },
    )


def _three(args: argparse.Namespace) -> tuple[Triangle, Triangle, Triangle]:
    t1, t2, t3 = load_scene(args).require_triangles(3)
    return t1, t2, t3


def check_theorem1(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    point = theorem1_check(*_three(args))
    return CommandResult(EXIT_OK, {"status": "verified", "axes_meet": point})


def check_theorem2(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    line = theorem2_check(*_three(args))
    return CommandResult(EXIT_OK, {"status": "verified", "centers_line": line})


def check_theorem3(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    axis = theorem3_check(*_three(args))
    return CommandResult(EXIT_OK, {"status": "verified", "common_axis": axis})


def check_eq1(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    t1, t2 = load_scene(args).require_triangles(2)
    n = nine_intersections(t1, t2)
    products = {mode: mode_product(n, t1, mode).value for mode in Mode}
    grand = products[Mode.P] * products[Mode.Q] * products[Mode.R]
    holds = grand == 1
    return CommandResult(
        exit_code=EXIT_OK if holds else EXIT_FAILED,
        report={
            "status": "verified" if holds else "failed",
            "intersections": {
                name: getattr(n, name)
                for name in ("p1", "q1", "r1", "p2", "q2", "r2", "p3", "q3", "r3")
            },
            "mode_products": products,
            "grand_product": grand,
        },
    )


def check_eq2(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    t1, t2 = load_scene(args).require_triangles(2)
    criterion = bihomology_criterion(t1, t2)
    center = perspector(t1, t2, Mode.P.correspondence)
    agree = criterion == (center is not None)
    return CommandResult(
        exit_code=EXIT_OK if agree else EXIT_FAILED,
        report={
            "status": "verified" if agree else "failed",
            "criterion": criterion,
            "vertex_joins_concurrent": center is not None,
            "center": center,
        },
    )


# construct


def construct_theorem8(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    scene = load_scene(args)
    (abc,) = scene.require_triangles(1)
    p, q = _construction_points(scene, abc)
    t1, t2 = theorem8_triangles(abc, p, q)
    points, triangles, names = _labelled_base(abc)
    return CommandResult(
        EXIT_OK,
        {
            "status": "constructed",
            "p": p,
            "q": q,
            "t1": t1,
            "t2": t2,
            "scene": _figure_scene(
                {**points, "P": p, "Q": q},
                {**triangles, "T1": t1, "T2": t2},
                vertex_names=names,
            ),
        },
    )


def construct_veronese(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    t1, t2 = load_scene(args).require_triangles(2)
    t3 = veronese(t1, t2)
    identity = Mode.P.correspondence
    axis = perspective_axis(t1, t2, identity)
    centers = {
        "t1-t2": perspector(t1, t2, identity),
        "t1-t3": perspector(t1, t3, identity),
        "t2-t3": perspector(t2, t3, identity),
    }
    distinct = list(dict.fromkeys(c for c in centers.values() if c is not None))
    centers_line = line_through(distinct) if len(distinct) >= 2 else None
    lines: dict[str, ProjLine] = {}
    if axis is not None:
        lines["axis"] = axis
    if centers_line is not None:
        lines["centers"] = centers_line
    return CommandResult(
        EXIT_OK,
        {
            "status": "constructed",
            "t3": t3,
            "axis": axis,
            "centers": centers,
            "centers_line": centers_line,
            "scene": _figure_scene(
                {},
                {"T1": t1, "T2": t2, "T3": t3},
                lines,
                classes={"centers": "centers-line"},
            ),
        },
    )


def construct_triplet(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    scene = load_scene(args)
    (abc,) = scene.require_triangles(1)
    p, q = _construction_points(scene, abc)
    triplet = trihomological_triplet(abc, p, q)
    points, triangles, names = _labelled_base(abc)
    report: dict[str, Any] = {
        "status": "constructed",
        "p": p,
        "q": q,
        "t1": triplet.t1,
        "t2": triplet.t2,
        "r": triplet.r,
        "r1": triplet.r1,
        "r2": triplet.r2,
        "centers_collinear": collinear(triplet.r, triplet.r1, triplet.r2),
        "centers_line": triplet.centers_line,
        "pair_centers": triplet.pair_centers,
    }
    if args.iterate:
        successor = iterate_triplet(triplet)
        report["successor"] = {
            "p": successor.p,
            "q": successor.q,
            "t1": successor.t1,
            "t2": successor.t2,
            "r": successor.r,
            "centers_line": successor.centers_line,
        }
    report["scene"] = _figure_scene(
        {**points, "P": p, "Q": q, "R": triplet.r, "R1": triplet.r1, "R2": triplet.r2},
        {**triangles, "T1": triplet.t1, "T2": triplet.t2},
        {"centers": triplet.centers_line},
        vertex_names=names,
        classes={"centers": "centers-line"},
    )
    return CommandResult(EXIT_OK, report)


# brocard


def _affine_triangle(args: argparse.Namespace) -> AffineTriangle:
    (t,) = load_scene(args).require_triangles(1)
    return AffineTriangle.from_triangle(t)


def brocard_first_triangle(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    t = _affine_triangle(args)
    first, second = brocard_points(t)
    fb = first_brocard_triangle(t)
    abc = t.to_triangle()
    points, triangles, names = _labelled_base(abc)
    return CommandResult(
        EXIT_OK,
        {
            "status": "constructed",
            "first_point": first,
            "second_point": second,
            "symmedian_point": symmedian_point(t),
            "first_brocard_triangle": fb,
            "scene": _figure_scene(
                {**points, "Omega1": first, "Omega2": second},
                {**triangles, "Brocard1": fb},
                vertex_names=names,
            ),
        },
    )


def brocard_neuberg(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    report = neuberg_check(_affine_triangle(args))
    if not report.precondition_met:
        code, status = EXIT_DEGENERATE, "precondition_unmet"
    elif report.passed:
        code, status = EXIT_OK, "verified"
    else:
        code, status = EXIT_FAILED, "failed"
    return CommandResult(
        code,
        {
            "status": status,
            "error": report.error,
            "first_point": report.first_point,
            "second_point": report.second_point,
            "first_brocard_triangle": report.brocard_triangle,
            "trihomological": report.trihomological,
            "third_center": report.third_center,
            "expected_third_center": report.expected_third_center,
            "centers_match": report.centers_match,
        },
    )


# explore


def _explorer_settings(args: argparse.Namespace, config: ConfigManager) -> ExplorerSettings:
    return config.explorer_with(
        trials=args.trials,
        seed=args.seed,
        coordinate_bound=args.bound,
        workers=args.workers,
    )


def explore_op1(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    settings = _explorer_settings(args, config)
    report = open_problem_1_search(
        trials=settings.trials,
        seed=settings.seed,
        bound=settings.coordinate_bound,
        workers=settings.workers,
        retry_budget=settings.retry_budget,
        max_recorded=settings.max_recorded,
    )
    found = report.found_counterexample
    return CommandResult(
        EXIT_FAILED if found else EXIT_OK,
        {"status": "counterexample_found" if found else "no_counterexample", **report.to_dict()},
    )


def explore_op2(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    settings = _explorer_settings(args, config)
    report = open_problem_2_search(
        trials=settings.trials,
        seed=settings.seed,
        bound=settings.coordinate_bound,
        family=args.family,
        workers=settings.workers,
        retry_budget=settings.retry_budget,
        max_recorded=settings.max_recorded,
    )
    found = report.found_counterexample
    return CommandResult(
        EXIT_FAILED if found else EXIT_OK,
        {"status": "counterexample_found" if found else "no_counterexample", **report.to_dict()},
    )


def explore_verify(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    if args.input is None:
        raise InputError("explore verify needs --input (a search report)")
    summary = verify_report_file(Path(args.input))
    return CommandResult(
        EXIT_OK if summary.all_confirmed else EXIT_FAILED,
        {"status": "verified" if summary.all_confirmed else "failed", **summary.to_dict()},
    )


# render


def render(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    if args.output is None:
        raise InputError("render needs --output (the SVG file to write)")
    scene = load_scene(args)
    svg = render_svg(None, scene, config.render)
    encoded = svg.encode("utf-8")
    return CommandResult(
        EXIT_OK,
        {
            "status": "rendered",
            "output": args.output,
            "bytes": len(encoded),
            "sha256": hashlib.sha256(encoded).hexdigest(),
        },
        artifact=svg,
    )


COMMANDS: dict[tuple[str, str | None], Handler] = {
    ("check", "pair"): check_pair,
    ("check", "theorem1"): check_theorem1,
    ("check", "theorem2"): check_theorem2,
    ("check", "theorem3"): check_theorem3,
    ("check", "eq1"): check_eq1,
    ("check", "eq2"): check_eq2,
    ("construct", "theorem8"): construct_theorem8,
    ("construct", "veronese"): construct_veronese,
    ("construct", "triplet"): construct_triplet,
    ("brocard", "first-triangle"): brocard_first_triangle,
    ("brocard", "neuberg"): brocard_neuberg,
    ("explore", "op1"): explore_op1,
    ("explore", "op2"): explore_op2,
    ("explore", "verify"): explore_verify,
    ("render", None): render,
}


def command_name(args: argparse.Namespace) -> str:
    return " ".join(part for part in (args.group, args.action) if part)


def run_command(args: argparse.Namespace, config: ConfigManager) -> CommandResult:
    handler = COMMANDS[(args.group, args.action)]
    logger.info(
        "Running command",
        cli_event="command_started",
        module=__name__,
        command=command_name(args),
    )
    result = handler(args, config)
    logger.info(
        "Command finished",
        cli_event="command_finished",
        module=__name__,
        command=command_name(args),
        exit_code=result.exit_code,
    )
    return result


__all__ = [
    "COMMANDS",
    "EXIT_DEGENERATE",
    "EXIT_FAILED",
    "EXIT_INPUT",
    "EXIT_OK",
    "CommandResult",
    "command_name",
    "run_command",
]
