#!/usr/bin/env python3
"""
Trihomology Toolkit - Command-line Entry Point

- Structured JSON logging with structlog, on stderr only
- JSON reports on stdout
- Global exception handling
- Exit codes: 0 verified, 1 property fails, 2 degenerate, 3 input error
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from types import TracebackType
from typing import NoReturn

import structlog

try:
    # Try relative imports first (when run as module)
    from .cli.commands import (
        EXIT_DEGENERATE,
        EXIT_FAILED,
        EXIT_INPUT,
        command_name,
        run_command,
    )
    from .cli.scene import emit_report
    from .config import get_config_manager, reset_config_manager
    from .explorer.search import OP2_FAMILIES
    from .geometry.errors import DegeneracyError, InputError, TheoremViolation
except ImportError:
    # Fall back to absolute imports (when run directly)
    import os

    sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    from src.cli.commands import (
        EXIT_DEGENERATE,
        EXIT_FAILED,
        EXIT_INPUT,
        command_name,
        run_command,
    )
    from src.cli.scene import emit_report
    from src.config import get_config_manager, reset_config_manager
    from src.explorer.search import OP2_FAMILIES
    from src.geometry.errors import DegeneracyError, InputError, TheoremViolation


def setup_logging(level: int = logging.WARNING) -> None:
    """Configure structured JSON logging on stderr"""
    logging.basicConfig(stream=sys.stderr, level=level, format="%(message)s", force=True)
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer(),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def setup_exception_handler() -> None:
    """Install global exception hook"""
    logger = structlog.get_logger(__name__)

    def handle_exception(
        exc_type: type[BaseException],
        exc_value: BaseException,
        exc_traceback: TracebackType | None,
    ) -> None:
        if issubclass(exc_type, KeyboardInterrupt):
            sys.__excepthook__(exc_type, exc_value, exc_traceback)
            return

        logger.error(
            "Uncaught exception",
            exception_event="global_exception",
            module=__name__,
            exc_info=(exc_type, exc_value, exc_traceback),
        )

    sys.excepthook = handle_exception


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Usage errors become InputError so they map to exit code 3"""

    def error(self, message: str) -> NoReturn:
        raise InputError(f"{self.prog}: {message}")


def build_parser() -> ToolkitArgumentParser:
    parser = ToolkitArgumentParser(
        prog="trihomology",
        description="Exact checks and constructions for tri-homological triangles",
    )
    parser.add_argument("--config", type=str, help="Configuration file (default: ~/.config/trihomology/config.json)")
    parser.add_argument("--verbose", action="store_true", help="Log at INFO level")

    io = argparse.ArgumentParser(add_help=False)
    io.add_argument("--input", type=str, help="Scene file, report with a scene, or - for stdin")
    io.add_argument("--output", type=str, help="Write the result to this file as well")

    groups = parser.add_subparsers(dest="group", required=True)

    check = groups.add_parser("check", help="Verify a theorem on a scene").add_subparsers(
        dest="action", required=True
    )
    pair = check.add_parser("pair", parents=[io], help="Homology report of the first two triangles")
    pair.add_argument(
        "--all-permutations",
        action="store_true",
        help="Evaluate all six vertex correspondences, not only the cyclic ones",
    )
    for name, text in (
        ("theorem1", "Common center: the three axes concur"),
        ("theorem2", "Common axis: the three centers are collinear"),
        ("theorem3", "Collinear centers: the three axes coincide"),
        ("eq1", "Product of the three mode groups equals 1"),
        ("eq2", "Bihomology criterion agrees with vertex-join concurrence"),
    ):
        check.add_parser(name, parents=[io], help=text)

    construct = groups.add_parser("construct", help="Build a configuration").add_subparsers(
        dest="action", required=True
    )
    construct.add_parser("theorem8", parents=[io], help="Two partners of a triangle from points p, q")
    construct.add_parser("veronese", parents=[io], help="Cross-meet triangle of a perspective pair")
    triplet = construct.add_parser("triplet", parents=[io], help="Verified tri-homological triplet")
    triplet.add_argument("--iterate", action="store_true", help="Also build the triplet from (p, r)")

    brocard = groups.add_parser("brocard", help="Brocard geometry").add_subparsers(
        dest="action", required=True
    )
    brocard.add_parser("first-triangle", parents=[io], help="First Brocard triangle")
    brocard.add_parser("neuberg", parents=[io], help="Tri-homology with the first Brocard triangle")

    explore = groups.add_parser("explore", help="Randomized searches").add_subparsers(
        dest="action", required=True
    )
    for name, text in (("op1", "Open problem 1 search"), ("op2", "Open problem 2 search")):
        search = explore.add_parser(name, parents=[io], help=text)
        search.add_argument("--trials", type=int, help="Number of trials (default: from config)")
        search.add_argument("--seed", type=int, help="Master seed (default: from config)")
        search.add_argument("--bound", type=int, help="Coordinate bound (default: from config)")
        search.add_argument("--workers", type=int, help="Worker processes (default: from config)")
        if name == "op2":
            search.add_argument("--family", choices=OP2_FAMILIES, default="theorem8")
    explore.add_parser("verify", parents=[io], help="Re-verify a saved search report")

    render = groups.add_parser("render", parents=[io], help="Draw a scene as SVG")
    render.set_defaults(action=None)
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments"""
    return build_parser().parse_args(argv)


def _error_exit(command: str, error: Exception, exit_code: int) -> int:
    sys.stdout.write(
        emit_report(
            command,
            {"status": "error", "error": {"type": type(error).__name__, "message": str(error)}},
        )
    )
    return exit_code


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot write {path}: {e}") from e


def main(argv: Sequence[str] | None = None) -> int:
    """Main application entry point; returns the exit code"""
    setup_logging()
    setup_exception_handler()
    logger = structlog.get_logger(__name__)

    try:
        args = parse_args(argv)
    except InputError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_INPUT
    command = command_name(args)

    try:
        reset_config_manager()
        config = get_config_manager(Path(args.config) if args.config else None)
        level = config.logging.numeric_level
        logging.getLogger().setLevel(min(level, logging.INFO) if args.verbose else level)

        logger.info(
            "Starting trihomology",
            app_event="app_start",
            module=__name__,
            command=command,
        )
        result = run_command(args, config)
        report = emit_report(command, result.report)
        if result.artifact is not None:
            _write(args.output, result.artifact)
        elif args.output:
            _write(args.output, report)
        sys.stdout.write(report)
        return result.exit_code

    except InputError as e:
        logger.info("Input rejected", cli_event="input_error", module=__name__, error=str(e))
        return _error_exit(command, e, EXIT_INPUT)
    except DegeneracyError as e:
        logger.info("Degenerate input", cli_event="degenerate", module=__name__, error=str(e))
        return _error_exit(command, e, EXIT_DEGENERATE)
    except TheoremViolation as e:
        return _error_exit(command, e, EXIT_FAILED)
    except ValueError as e:
        # Configuration values and search arguments validate with ValueError
        logger.info("Invalid value", cli_event="invalid_value", module=__name__, error=str(e))
        return _error_exit(command, e, EXIT_INPUT)


def run_app() -> None:
    """Entry point for the console script"""
    sys.exit(main())


if __name__ == "__main__":
    run_app()
