#!/usr/bin/env python3
"""
Golden Figure Script

Regenerates tests/golden/triplet.svg, the reference drawing of the affine
triplet (A=(0,0), B=(4,0), C=(0,4), p=(4/3,2), q=(2/3,4/3)), by running the
same two commands the golden test runs. Review the diff before committing.

Equivalent to: uv run pytest -m golden --update-golden
"""

import io
import json
import sys
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

import structlog

PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.app import main as toolkit_main, setup_logging  # noqa: E402

GOLDEN_FILE = PROJECT_ROOT / "tests" / "golden" / "triplet.svg"

TRIPLET_SCENE = {
    "points": {
        "A": ["0", "0", "1"],
        "B": ["4", "0", "1"],
        "C": ["0", "4", "1"],
        "P": ["4/3", "2", "1"],
        "Q": ["2/3", "4/3", "1"],
    },
    "triangles": {"ABC": ["A", "B", "C"]},
}


def run_step(argv: list[str]) -> bool:
    """Run one toolkit command, keeping its report off the console"""
    logger = structlog.get_logger(__name__)
    with redirect_stdout(io.StringIO()) as report:
        code = toolkit_main(argv)
    if code != 0:
        logger.error(
            "Toolkit command failed",
            build_event="golden_step_failed",
            module=__name__,
            command=" ".join(argv[:2]),
            exit_code=code,
            report=report.getvalue(),
        )
        return False
    return True


def build_golden() -> bool:
    """Construct the triplet and render it into the golden file"""
    logger = structlog.get_logger(__name__)

    with tempfile.TemporaryDirectory() as tmp:
        work = Path(tmp)
        scene = work / "scene.json"
        scene.write_text(json.dumps(TRIPLET_SCENE, indent=2), encoding="utf-8")
        triplet = work / "triplet.json"
        svg = work / "triplet.svg"

        if not run_step(["construct", "triplet", "--input", str(scene), "--output", str(triplet)]):
            return False
        if not run_step(["render", "--input", str(triplet), "--output", str(svg)]):
            return False

        GOLDEN_FILE.parent.mkdir(parents=True, exist_ok=True)
        previous = GOLDEN_FILE.read_text(encoding="utf-8") if GOLDEN_FILE.exists() else None
        current = svg.read_text(encoding="utf-8")
        GOLDEN_FILE.write_text(current, encoding="utf-8")

    # toolkit_main reconfigures logging for its own run
    setup_logging()
    logger.warning(
        "Golden figure written",
        build_event="golden_written",
        module=__name__,
        golden_file=str(GOLDEN_FILE),
        changed=previous != current,
        size=len(current.encode("utf-8")),
    )
    return True


def main() -> None:
    """Main build script entry point"""
    setup_logging()
    if not build_golden():
        sys.exit(1)


if __name__ == "__main__":
    main()
