"""Pytest configuration and fixtures for the trihomology toolkit tests."""

import json
from collections.abc import Callable, Generator
from pathlib import Path
from typing import Any

import pytest

from src.config import reset_config_manager
from src.config.user_config import UserConfig
from src.geometry.kernel import ProjPoint, Triangle

GOLDEN_DIR = Path(__file__).parent / "golden"


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="Rewrite files in tests/golden instead of comparing against them",
    )


@pytest.fixture
def update_golden(request: pytest.FixtureRequest) -> bool:
    return bool(request.config.getoption("--update-golden"))


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Generator[Path]:
    """Point the default configuration location at an empty temp directory."""
    config_dir = tmp_path / "user-config"
    monkeypatch.setattr(UserConfig, "DEFAULT_CONFIG_DIR", config_dir)
    reset_config_manager()
    yield config_dir
    reset_config_manager()


@pytest.fixture
def reference_triangle() -> Triangle:
    """The projective reference triangle (1:0:0), (0:1:0), (0:0:1)."""
    return Triangle.from_coords((1, 0, 0), (0, 1, 0), (0, 0, 1))


@pytest.fixture
def construction_points() -> tuple[ProjPoint, ProjPoint]:
    """p, q in general position with respect to the reference triangle."""
    return ProjPoint((1, 2, 3)), ProjPoint((3, 1, 2))


@pytest.fixture
def affine_triangle() -> Triangle:
    return Triangle.from_coords((0, 0, 1), (4, 0, 1), (0, 4, 1))


@pytest.fixture
def affine_construction_points() -> tuple[ProjPoint, ProjPoint]:
    """Images of the reference p, q under the map sending the reference triangle to (0,0), (4,0), (0,4)."""
    return ProjPoint.of("4/3", 2), ProjPoint.of("2/3", "4/3")


@pytest.fixture
def non_perspective_pair() -> tuple[Triangle, Triangle]:
    """Affine pair whose nine side meets are finite and off the first triangle's vertices."""
    return (
        Triangle.from_coords((0, 0, 1), (1, 0, 1), (0, 1, 1)),
        Triangle.from_coords((2, 3, 1), (5, 1, 1), (4, 7, 1)),
    )


@pytest.fixture
def pythagorean_scene() -> dict[str, Any]:
    return {
        "schema": "trihomology.scene/1",
        "points": {"A": ["0", "0", "1"], "B": ["3", "0", "1"], "C": ["0", "4", "1"]},
        "triangles": {"ABC": ["A", "B", "C"]},
    }


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], Path]:
    """Write a JSON document into tmp_path and return its path."""

    def write(name: str, document: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document, indent=2), encoding="utf-8")
        return path

    return write
