"""
SVG Figures

Deterministic SVG 1.1 drawings of scenes. All geometry stays exact until
the final step: clipping is done with Fractions and coordinates are
decimalized with round-half-even only when written out.

Triangle sides and lines are clipped to the viewport; a triangle side that
ends at a vertex at infinity is drawn as a ray in that vertex's canonical
direction. Finite lines are labelled at the middle of their visible segment;
points and lines at infinity are listed in the legend.
"""

from fractions import Fraction
from xml.sax.saxutils import escape, quoteattr

import structlog

from ..config.user_config import RenderSettings
from ..geometry.errors import EmptyViewport
from ..geometry.kernel import ProjLine, ProjPoint, Triangle
from .scene import FigureElement, FigureSpec, SceneFile, Viewport

logger = structlog.get_logger(__name__)

DEFAULT_VIEWPORT: Viewport = (Fraction(-1), Fraction(-1), Fraction(1), Fraction(1))
LEGEND_LINE_PX = 14

STYLE = """\
<style>
.frame { fill: none; stroke: #000000; stroke-width: 1 }
.axis { stroke: #b0b0b0; stroke-width: 0.5 }
.triangle-1 { fill: none; stroke: #1f4e9c; stroke-width: 1.5 }
.triangle-2 { fill: none; stroke: #b8322a; stroke-width: 1.5 }
.triangle-3 { fill: none; stroke: #2f7d32; stroke-width: 1.5 }
.line { stroke: #555555; stroke-width: 1 }
.centers-line { stroke: #000000; stroke-width: 1; stroke-dasharray: 6 4 }
.point { fill: #000000 }
.label { font-family: sans-serif; font-size: 12px }
.legend { font-family: sans-serif; font-size: 11px; fill: #555555 }
</style>"""

XY = tuple[Fraction, Fraction]


def format_decimal(value: Fraction, decimals: int) -> str:
    """Exact round-half-even to `decimals` places, trailing zeros dropped"""
    scaled = round(value * 10**decimals)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**decimals)
    if decimals == 0 or frac == 0:
        return f"{sign}{whole}"
    digits = str(frac).rjust(decimals, "0").rstrip("0")
    return f"{sign}{whole}.{digits}"


def _clip(
    origin: XY,
    direction: XY,
    t_lo: Fraction | None,
    t_hi: Fraction | None,
    viewport: Viewport,
) -> tuple[XY, XY] | None:
    """Liang-Barsky clip of origin + t*direction, t in [t_lo, t_hi] (None = unbounded)"""
    x0, y0 = origin
    dx, dy = direction
    xmin, ymin, xmax, ymax = viewport
    for p, q in ((-dx, x0 - xmin), (dx, xmax - x0), (-dy, y0 - ymin), (dy, ymax - y0)):
        if p == 0:
            if q < 0:
                return None
            continue
        t = Fraction(q) / Fraction(p)
        if p < 0:
            if t_lo is None or t > t_lo:
                t_lo = t
        elif t_hi is None or t < t_hi:
            t_hi = t
    if t_lo is None or t_hi is None or t_lo >= t_hi:
        return None
    return (x0 + t_lo * dx, y0 + t_lo * dy), (x0 + t_hi * dx, y0 + t_hi * dy)


def _side_segment(u: ProjPoint, v: ProjPoint, viewport: Viewport) -> tuple[XY, XY] | None:
    if u.is_at_infinity and v.is_at_infinity:
        return None
    if u.is_at_infinity:
        u, v = v, u
    origin = u.affine()
    if v.is_at_infinity:
        return _clip(origin, (Fraction(v.x), Fraction(v.y)), Fraction(0), None, viewport)
    end = v.affine()
    return _clip(
        origin, (end[0] - origin[0], end[1] - origin[1]), Fraction(0), Fraction(1), viewport
    )


def _line_segment(line: ProjLine, viewport: Viewport) -> tuple[XY, XY] | None:
    a, b, c = (Fraction(v) for v in line.coeffs)
    origin = (Fraction(0), -c / b) if b != 0 else (-c / a, Fraction(0))
    return _clip(origin, (b, -a), None, None, viewport)


def _inside(point: XY, viewport: Viewport) -> bool:
    xmin, ymin, xmax, ymax = viewport
    return xmin <= point[0] <= xmax and ymin <= point[1] <= ymax


def default_figure(scene: SceneFile) -> FigureSpec:
    """Every triangle (cycling the three triangle classes), line and point"""
    elements = [
        FigureElement(name=name, css_class=f"triangle-{i % 3 + 1}")
        for i, name in enumerate(scene.triangles)
    ]
    elements += [FigureElement(name=name, css_class="line") for name in scene.lines]
    elements += [FigureElement(name=name, css_class="point") for name in scene.points]
    return FigureSpec(viewport=None, elements=tuple(elements))


def _finite_points(spec: FigureSpec, scene: SceneFile) -> list[XY]:
    found = []
    for element in spec.elements:
        candidates: tuple[ProjPoint, ...] = ()
        if element.name in scene.points:
            candidates = (scene.points[element.name],)
        elif element.name in scene.triangles:
            candidates = scene.triangles[element.name].vertices
        found += [p.affine() for p in candidates if not p.is_at_infinity]
    return found


def resolve_viewport(spec: FigureSpec, scene: SceneFile, margin: Fraction) -> Viewport:
    """
    The explicit viewport, else the bounding box of the drawn finite points
    padded by `margin` times its larger extent (one unit for a single point).

    Raises:
        EmptyViewport: If the window has no area
    """
    if spec.viewport is not None:
        viewport = spec.viewport
    else:
        points = _finite_points(spec, scene)
        if not points:
            viewport = DEFAULT_VIEWPORT
        else:
            xs, ys = [p[0] for p in points], [p[1] for p in points]
            extent = max(max(xs) - min(xs), max(ys) - min(ys))
            pad = margin * extent if extent > 0 else Fraction(1)
            viewport = (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)
    xmin, ymin, xmax, ymax = viewport
    if xmin >= xmax or ymin >= ymax:
        raise EmptyViewport(f"Viewport {[str(v) for v in viewport]} has no area")
    return viewport


class _Canvas:
    """Pixel transform and element writer for one figure"""

    def __init__(self, viewport: Viewport, settings: RenderSettings):
        self.viewport = viewport
        self.settings = settings
        xmin, ymin, xmax, ymax = viewport
        self.scale = Fraction(settings.width_px) / (xmax - xmin)
        self.width = Fraction(settings.width_px)
        self.height = self.scale * (ymax - ymin)
        self.rows: list[str] = []
        self.legend: list[str] = []
        self._labels: set[tuple[str, str, str]] = set()

    def num(self, value: Fraction) -> str:
        return format_decimal(value, self.settings.decimals)

    def px(self, point: XY) -> tuple[str, str]:
        xmin, _, _, ymax = self.viewport
        return self.num((point[0] - xmin) * self.scale), self.num((ymax - point[1]) * self.scale)

    def segment(self, css_class: str, start: XY, end: XY) -> None:
        x1, y1 = self.px(start)
        x2, y2 = self.px(end)
        self.rows.append(
            f'<line class="{css_class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>'
        )

    def label(self, text: str, at: XY) -> None:
        x, y = self.px(at)
        offset = Fraction(self.settings.label_offset_px)
        lx, ly = self.num(Fraction(x) + offset), self.num(Fraction(y) - offset)
        key = (text, lx, ly)
        if key in self._labels:
            return
        self._labels.add(key)
        self.rows.append(f'<text class="label" x="{lx}" y="{ly}">{escape(text)}</text>')

    def marker(self, at: XY) -> None:
        x, y = self.px(at)
        self.rows.append(
            f'<circle class="point" cx="{x}" cy="{y}" r="{self.settings.marker_radius_px}"/>'
        )

    def axes(self) -> None:
        xmin, ymin, xmax, ymax = self.viewport
        if ymin <= 0 <= ymax:
            self.segment("axis", (xmin, Fraction(0)), (xmax, Fraction(0)))
        if xmin <= 0 <= xmax:
            self.segment("axis", (Fraction(0), ymin), (Fraction(0), ymax))


def _draw_point(canvas: _Canvas, point: ProjPoint, text: str) -> None:
    if point.is_at_infinity:
        canvas.legend.append(f"{text} at infinity {point}")
        return
    at = point.affine()
    if _inside(at, canvas.viewport):
        canvas.marker(at)
        canvas.label(text, at)


def _draw_triangle(
    canvas: _Canvas, triangle: Triangle, css_class: str, names: tuple[str, str, str] | None
) -> None:
    v = triangle.vertices
    canvas.rows.append(f'<g class="{css_class}">')
    for i in range(3):
        clipped = _side_segment(v[(i + 1) % 3], v[(i + 2) % 3], canvas.viewport)
        if clipped is not None:
            canvas.segment(css_class, *clipped)
    canvas.rows.append("</g>")
    if names is None:
        return
    for vertex, name in zip(v, names, strict=True):
        if vertex.is_at_infinity:
            canvas.legend.append(f"{name} at infinity {vertex}")
        elif _inside(vertex.affine(), canvas.viewport):
            canvas.label(name, vertex.affine())


def _draw_line(canvas: _Canvas, line: ProjLine, css_class: str, text: str) -> None:
    if line.is_at_infinity:
        canvas.legend.append(f"{text} is the line at infinity")
        return
    clipped = _line_segment(line, canvas.viewport)
    if clipped is None:
        return
    start, end = clipped
    canvas.segment(css_class, start, end)
    canvas.label(text, ((start[0] + end[0]) / 2, (start[1] + end[1]) / 2))


def render_svg(
    spec: FigureSpec | None, scene: SceneFile, settings: RenderSettings | None = None
) -> str:
    """
    Draw the figure's elements (or the whole scene when spec is None and the
    scene has no figure section).

    Raises:
        EmptyViewport: If the viewport has no area
    """
    settings = settings or RenderSettings()
    spec = spec or scene.figure or default_figure(scene)
    viewport = resolve_viewport(spec, scene, settings.margin_fraction)
    canvas = _Canvas(viewport, settings)

    width, height = canvas.num(canvas.width), canvas.num(canvas.height)
    canvas.rows += [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        STYLE,
        f'<rect class="frame" x="0" y="0" width="{width}" height="{height}"/>',
    ]
    canvas.axes()

    for element in spec.elements:
        text = element.label or element.name
        if element.name in scene.triangles:
            _draw_triangle(
                canvas,
                scene.triangles[element.name],
                element.css_class or "triangle-1",
                scene.vertex_names.get(element.name),
            )
        elif element.name in scene.lines:
            _draw_line(canvas, scene.lines[element.name], element.css_class or "line", text)
        elif element.name in scene.points:
            _draw_point(canvas, scene.points[element.name], text)

    for k, entry in enumerate(canvas.legend):
        y = canvas.height - 6 - LEGEND_LINE_PX * (len(canvas.legend) - 1 - k)
        canvas.rows.append(
            f'<text class="legend" x="6" y={quoteattr(canvas.num(y))}>{escape(entry)}</text>'
        )
    canvas.rows.append("</svg>")

    logger.debug(
        "Figure rendered",
        render_event="svg_rendered",
        module=__name__,
        elements=len(spec.elements),
        legend_entries=len(canvas.legend),
    )
    return "\n".join(canvas.rows) + "\n"


__all__ = [
    "DEFAULT_VIEWPORT",
    "default_figure",
    "format_decimal",
    "render_svg",
    "resolve_viewport",
]
