"""SVG figures rendered through jinja2 templates."""

from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from jinja2 import Environment, FileSystemLoader, select_autoescape

from papertorus.core.models import Configuration, Development, HullReport, SliceResult

TEMPLATE_DIR = Path(__file__).parent.parent / "templates"

WIDTH = 640
HEIGHT = 640
PAD = 24

Transform = Callable[[float, float], Tuple[float, float]]


@lru_cache(maxsize=1)
def template_env() -> Environment:
    return Environment(
        loader=FileSystemLoader(str(TEMPLATE_DIR)),
        autoescape=select_autoescape(["svg.j2", "xml"]),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )


def viewport(points: Iterable[Tuple[float, float]], width: int = WIDTH, height: int = HEIGHT) -> Transform:
    """Uniform scale fitting ``points`` into the canvas, y pointing up."""
    pts = list(points)
    if not pts:
        return lambda x, y: (width / 2, height / 2)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (min(width, height) - 2 * PAD) / span
    cx = (max(xs) + min(xs)) / 2
    cy = (max(ys) + min(ys)) / 2

    def transform(x: float, y: float) -> Tuple[float, float]:
        return width / 2 + (x - cx) * scale, height / 2 - (y - cy) * scale

    return transform


def _points_attr(points: Sequence[Tuple[float, float]], tf: Transform) -> str:
    return " ".join("{:.2f},{:.2f}".format(*tf(x, y)) for x, y in points)


def render_development_svg(dev: Development, title: str = "development", copies: int = 1) -> str:
    """Faces of one fundamental domain, lattice translates in grey, generators in red."""
    base = [[(float(x), float(y)) for x, y in tri] for tri in dev.face_positions]
    (ax, ay), (bx, by) = [(float(x), float(y)) for x, y in dev.lattice]
    shifted: List[List[Tuple[float, float]]] = []
    for i in range(-copies, copies + 1):
        for j in range(-copies, copies + 1):
            if i == 0 and j == 0:
                continue
            dx, dy = i * ax + j * bx, i * ay + j * by
            shifted.extend([[(x + dx, y + dy) for x, y in tri] for tri in base])
    tf = viewport([p for tri in base + shifted for p in tri])
    ox, oy = (float(v) for v in dev.vertex_lifts[0])
    arrows = []
    for vx, vy in ((ax, ay), (bx, by)):
        x1, y1 = tf(ox, oy)
        x2, y2 = tf(ox + vx, oy + vy)
        arrows.append({"x1": f"{x1:.2f}", "y1": f"{y1:.2f}", "x2": f"{x2:.2f}", "y2": f"{y2:.2f}"})
    labels = []
    for v, (x, y) in enumerate(dev.vertex_lifts):
        px, py = tf(float(x), float(y))
        labels.append({"x": f"{px + 3:.2f}", "y": f"{py - 3:.2f}", "text": str(v)})
    return template_env().get_template("development.svg.j2").render(
        title=title,
        width=WIDTH,
        height=HEIGHT,
        faces=[
            {"points": _points_attr(tri, tf), "fill": "#d6e4f5" if idx == dev.base_face else "#f4f4f4"}
            for idx, tri in enumerate(base)
        ],
        copies=[_points_attr(tri, tf) for tri in shifted],
        lattice=arrows,
        labels=labels,
    )


def render_slice_svg(result: SliceResult, title: str = "slice") -> str:
    loops = [[(float(x), float(y)) for x, y in loop] for loop in result.loops]
    chains = [[(float(x), float(y)) for x, y in chain] for chain in result.open_chains]
    tf = viewport([p for poly in loops + chains for p in poly])
    return template_env().get_template("slice.svg.j2").render(
        title=title,
        width=WIDTH,
        height=HEIGHT,
        loops=[_points_attr(loop, tf) for loop in loops],
        open_chains=[_points_attr(chain, tf) for chain in chains],
    )


def render_projection_svg(
    c: Configuration, hull: Optional[HullReport] = None, title: str = "top view"
) -> str:
    """XY projection; torus faces that are hull facets are filled blue."""
    pts = [(x, y) for x, y, _ in c.as_floats()]
    tf = viewport(pts)
    on_hull = {frozenset(f) for f in hull.torus_facets} if hull else set()
    faces = []
    for face in c.triangulation.faces:
        faces.append(
            {
                "points": _points_attr([pts[v] for v in face], tf),
                "fill": "#4a78c2" if frozenset(face) in on_hull else "#eeeeee",
            }
        )
    labels = []
    for v, (x, y) in enumerate(pts):
        px, py = tf(x, y)
        labels.append({"x": f"{px + 3:.2f}", "y": f"{py - 3:.2f}", "text": str(v)})
    return template_env().get_template("projection.svg.j2").render(
        title=title, width=WIDTH, height=HEIGHT, faces=faces, labels=labels
    )
