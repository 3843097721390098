"""
Scene and Report I/O

Scene files are JSON documents naming points, lines and triangles with exact
rational coordinates written as strings ("3", "-4", "2/3"), plus an optional
figure section for rendering. Reports are stable-ordered JSON in which every
exact value is a string.

Scene layout (schema "trihomology.scene/1"):

    {
      "schema": "trihomology.scene/1",
      "points": {"P": ["1", "2", "1"]},
      "lines": {"d": ["1", "1", "-3"]},
      "triangles": {"ABC": ["A", "B", "C"], "T": [["0", "0", "1"], ...]},
      "figure": {"viewport": ["-1", "-1", "4", "5"],
                 "elements": [{"name": "ABC", "class": "triangle-1"}]}
    }

A triangle vertex is either a coordinate list or the name of a point.
"""

import json
import re
from collections.abc import Mapping
from dataclasses import dataclass, field, fields, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

from ..geometry.errors import (
    InputError,
    MalformedRational,
    ParseError,
    UnknownName,
    ZeroVector,
)
from ..geometry.kernel import ProjLine, ProjPoint, Triangle

SCENE_SCHEMA = "trihomology.scene/1"
REPORT_SCHEMA = "trihomology.report/1"

STROKE_CLASSES = (
    "triangle-1",
    "triangle-2",
    "triangle-3",
    "line",
    "centers-line",
    "point",
)

_RATIONAL = re.compile(r"-?[0-9]+(/[0-9]+)?")
_SCENE_KEYS = {"schema", "points", "lines", "triangles", "figure"}

Viewport = tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class FigureElement:
    name: str
    css_class: str | None = None
    label: str | None = None


@dataclass(frozen=True)
class FigureSpec:
    """Affine window (xmin, ymin, xmax, ymax) and the elements to draw"""

    viewport: Viewport | None = None
    elements: tuple[FigureElement, ...] = ()


@dataclass(frozen=True)
class SceneFile:
    """
    Named, canonicalized kernel values. Names are unique across all kinds;
    insertion order is kept because commands pick their inputs by position.
    """

    points: dict[str, ProjPoint] = field(default_factory=dict)
    lines: dict[str, ProjLine] = field(default_factory=dict)
    triangles: dict[str, Triangle] = field(default_factory=dict)
    # Triangles whose vertices were given as point names
    vertex_names: dict[str, tuple[str, str, str]] = field(default_factory=dict)
    figure: FigureSpec | None = None

    def names(self) -> list[str]:
        return [*self.points, *self.lines, *self.triangles]

    def require_triangles(self, count: int) -> list[Triangle]:
        triangles = list(self.triangles.values())
        if len(triangles) < count:
            raise InputError(f"Scene needs at least {count} triangle(s), found {len(triangles)}")
        return triangles[:count]


def parse_rational(text: Any, where: str) -> Fraction:
    """
    Raises:
        MalformedRational: Unless text is "n" or "n/d" with d > 0
    """
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text):
        raise MalformedRational(f"{where}: expected a rational string like '3' or '-2/5', got {text!r}")
    value = text.split("/")
    if len(value) == 2 and int(value[1]) == 0:
        raise MalformedRational(f"{where}: zero denominator in {text!r}")
    return Fraction(text)


def _parse_triple(raw: Any, where: str) -> tuple[Fraction, Fraction, Fraction]:
    if not isinstance(raw, list) or len(raw) != 3:
        raise ParseError(f"{where}: expected a list of 3 rational strings")
    a, b, c = (parse_rational(value, f"{where}[{i}]") for i, value in enumerate(raw))
    return a, b, c


def _parse_point(raw: Any, where: str) -> ProjPoint:
    try:
        return ProjPoint(_parse_triple(raw, where))  # type: ignore[arg-type]
    except ZeroVector as e:
        raise ParseError(f"{where}: {e}") from e


def _parse_line(raw: Any, where: str) -> ProjLine:
    try:
        return ProjLine(_parse_triple(raw, where))  # type: ignore[arg-type]
    except ZeroVector as e:
        raise ParseError(f"{where}: {e}") from e


def _reject_duplicates(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    result: dict[str, Any] = {}
    for key, value in pairs:
        if key in result:
            raise ParseError(f"Duplicate key {key!r}")
        result[key] = value
    return result


def _section(raw: Mapping[str, Any], key: str) -> dict[str, Any]:
    section = raw.get(key, {})
    if not isinstance(section, dict):
        raise ParseError(f"Section {key!r} must be an object")
    return section


def _parse_figure(raw: Any, known: set[str]) -> FigureSpec:
    if not isinstance(raw, dict):
        raise ParseError("Section 'figure' must be an object")
    unknown_keys = set(raw) - {"viewport", "elements"}
    if unknown_keys:
        raise ParseError(f"Unknown figure keys: {sorted(unknown_keys)}")

    viewport: Viewport | None = None
    if "viewport" in raw:
        box = raw["viewport"]
        if not isinstance(box, list) or len(box) != 4:
            raise ParseError("figure.viewport: expected [xmin, ymin, xmax, ymax]")
        xmin, ymin, xmax, ymax = (
            parse_rational(v, f"figure.viewport[{i}]") for i, v in enumerate(box)
        )
        viewport = (xmin, ymin, xmax, ymax)

    elements = []
    for i, item in enumerate(raw.get("elements", [])):
        where = f"figure.elements[{i}]"
        if not isinstance(item, dict) or "name" not in item:
            raise ParseError(f"{where}: expected an object with a 'name'")
        name = item["name"]
        if name not in known:
            raise UnknownName(f"{where}: {name!r} is not defined in the scene")
        css_class = item.get("class")
        if css_class is not None and css_class not in STROKE_CLASSES:
            raise ParseError(f"{where}: unknown class {css_class!r}")
        elements.append(FigureElement(name=name, css_class=css_class, label=item.get("label")))
    return FigureSpec(viewport=viewport, elements=tuple(elements))


def scene_from_dict(raw: Any) -> SceneFile:
    """
    Build a SceneFile from decoded JSON.

    Raises:
        ParseError: Structural problems, including a zero coordinate triple
        UnknownName: A triangle or figure element names an undefined value
        MalformedRational: A coordinate is not an exact rational string
        DegenerateTriangle: A triangle's vertices are collinear
    """
    if not isinstance(raw, dict):
        raise ParseError("A scene must be a JSON object")
    unknown_keys = set(raw) - _SCENE_KEYS
    if unknown_keys:
        raise ParseError(f"Unknown scene keys: {sorted(unknown_keys)}")
    schema = raw.get("schema", SCENE_SCHEMA)
    if schema != SCENE_SCHEMA:
        raise ParseError(f"Unsupported schema {schema!r}, expected {SCENE_SCHEMA!r}")

    seen: set[str] = set()

    def claim(name: str) -> None:
        if name in seen:
            raise ParseError(f"Name {name!r} is defined more than once")
        seen.add(name)

    points: dict[str, ProjPoint] = {}
    for name, value in _section(raw, "points").items():
        claim(name)
        points[name] = _parse_point(value, f"points.{name}")

    lines: dict[str, ProjLine] = {}
    for name, value in _section(raw, "lines").items():
        claim(name)
        lines[name] = _parse_line(value, f"lines.{name}")

    triangles: dict[str, Triangle] = {}
    vertex_names: dict[str, tuple[str, str, str]] = {}
    for name, value in _section(raw, "triangles").items():
        claim(name)
        where = f"triangles.{name}"
        if not isinstance(value, list) or len(value) != 3:
            raise ParseError(f"{where}: expected 3 vertices")
        vertices = []
        for i, vertex in enumerate(value):
            if isinstance(vertex, str):
                if vertex not in points:
                    raise UnknownName(f"{where}[{i}]: point {vertex!r} is not defined")
                vertices.append(points[vertex])
            else:
                vertices.append(_parse_point(vertex, f"{where}[{i}]"))
        triangles[name] = Triangle(*vertices)
        if all(isinstance(vertex, str) for vertex in value):
            vertex_names[name] = (value[0], value[1], value[2])

    figure = _parse_figure(raw["figure"], seen) if "figure" in raw else None
    return SceneFile(
        points=points,
        lines=lines,
        triangles=triangles,
        vertex_names=vertex_names,
        figure=figure,
    )


def parse_scene(text: str) -> SceneFile:
    """
    Raises:
        ParseError: With line and column for malformed JSON
    """
    return scene_from_dict(_decode(text))


def _decode(text: str) -> Any:
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from e


def parse_scene_document(text: str) -> SceneFile:
    """A scene file, or a report carrying a "scene" section"""
    raw = _decode(text)
    if isinstance(raw, dict) and raw.get("schema") == REPORT_SCHEMA:
        if "scene" not in raw:
            raise InputError("Report has no scene section")
        return scene_from_dict(raw["scene"])
    return scene_from_dict(raw)


def _coords(values: tuple[int, int, int]) -> list[str]:
    return [str(v) for v in values]


def scene_to_dict(scene: SceneFile) -> dict[str, Any]:
    triangles: dict[str, Any] = {}
    for name, triangle in scene.triangles.items():
        labels = scene.vertex_names.get(name)
        if labels is not None and all(
            scene.points.get(label) == vertex
            for label, vertex in zip(labels, triangle.vertices, strict=True)
        ):
            triangles[name] = list(labels)
        else:
            triangles[name] = [_coords(v.coords) for v in triangle.vertices]

    result: dict[str, Any] = {
        "schema": SCENE_SCHEMA,
        "points": {name: _coords(p.coords) for name, p in scene.points.items()},
        "lines": {name: _coords(line.coeffs) for name, line in scene.lines.items()},
        "triangles": triangles,
    }
    if scene.figure is not None:
        figure: dict[str, Any] = {}
        if scene.figure.viewport is not None:
            figure["viewport"] = [str(v) for v in scene.figure.viewport]
        elements = []
        for element in scene.figure.elements:
            item = {"name": element.name}
            if element.css_class is not None:
                item["class"] = element.css_class
            if element.label is not None:
                item["label"] = element.label
            elements.append(item)
        figure["elements"] = elements
        result["figure"] = figure
    return result


def emit_scene(scene: SceneFile) -> str:
    return json.dumps(scene_to_dict(scene), indent=2, ensure_ascii=False) + "\n"


def to_jsonable(value: Any) -> Any:
    """Exact values become strings; containers keep their key order"""
    if value is None or isinstance(value, bool | int | float | str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, ProjPoint):
        return _coords(value.coords)
    if isinstance(value, ProjLine):
        return _coords(value.coeffs)
    if isinstance(value, Triangle):
        return [_coords(v.coords) for v in value.vertices]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, SceneFile):
        return scene_to_dict(value)
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, Mapping):
        return {
            (k.value if isinstance(k, Enum) else str(k)): to_jsonable(v)
            for k, v in value.items()
        }
    if isinstance(value, list | tuple | set | frozenset):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=json.dumps) if isinstance(value, set | frozenset) else items
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def emit_report(command: str, result: Mapping[str, Any]) -> str:
    """Versioned, stable-ordered JSON report"""
    document = {"schema": REPORT_SCHEMA, "command": command, **to_jsonable(result)}
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


__all__ = [
    "REPORT_SCHEMA",
    "SCENE_SCHEMA",
    "STROKE_CLASSES",
    "FigureElement",
    "FigureSpec",
    "SceneFile",
    "emit_report",
    "emit_scene",
    "parse_rational",
    "parse_scene",
    "parse_scene_document",
    "scene_from_dict",
    "scene_to_dict",
    "to_jsonable",
]
