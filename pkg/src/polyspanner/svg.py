"""SVG rendering of scenes and graphs."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .scene import Scene
from .visibility import Graph

_W = 860.0


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def render_svg(
    scene: Scene,
    graph: Graph = None,
    highlight_path=None,
    highlight_cone=None,
    title: str = "",
) -> str:
    """Standalone SVG: obstacles filled, edges drawn, vertices dotted.

    highlight_path: sequence of vertex indices drawn as a thick
    polyline. highlight_cone: (apex_index, angle0, angle1) in radians,
    drawn as a translucent wedge.
    """
    if scene.n == 0:
        return (
            '<svg xmlns="http://www.w3.org/2000/svg" width="100" height="100" '
            'viewBox="0 0 100 100"><rect width="100" height="100" '
            'fill="#ffffff"/></svg>\n'
        )
    xs = [float(x) for x, _ in scene.vertices]
    ys = [float(y) for _, y in scene.vertices]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    pad = 0.06 * span
    scale = _W / (span + 2 * pad)
    height = (y1 - y0 + 2 * pad) * scale

    def sx(x: float) -> float:
        return (x - x0 + pad) * scale

    def sy(y: float) -> float:
        # svg y grows downward
        return (y1 - y + pad) * scale

    pts = [(sx(x), sy(y)) for x, y in zip(xs, ys)]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(_W)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(_W)} {_fmt(height)}">',
        f'<rect width="{_fmt(_W)}" height="{_fmt(height)}" fill="#ffffff"/>',
    ]
    if title:
        out.append(
            f'<title>{escape(title)}</title>'
        )
    for ring in scene.obstacles:
        coords = " ".join(f"{_fmt(pts[i][0])},{_fmt(pts[i][1])}" for i in ring)
        out.append(
            f'<polygon points="{coords}" fill="#d7d2c8" stroke="#6b6458" '
            'stroke-width="1.2"/>'
        )
    if highlight_cone is not None:
        apex, a0, a1 = highlight_cone
        ax, ay = pts[apex]
        r = 0.35 * _W
        wedge = [f"M {_fmt(ax)} {_fmt(ay)}"]
        steps = 24
        for t in range(steps + 1):
            ang = a0 + (a1 - a0) * t / steps
            wedge.append(
                f"L {_fmt(ax + r * math.cos(ang))} {_fmt(ay - r * math.sin(ang))}"
            )
        wedge.append("Z")
        out.append(
            f'<path d="{" ".join(wedge)}" fill="#4a90d9" fill-opacity="0.18" '
            'stroke="#4a90d9" stroke-width="0.8"/>'
        )
    if graph is not None:
        if graph.n != scene.n:
            raise ValueError(f"graph has {graph.n} vertices, scene has {scene.n}")
        for u, v in graph.sorted_edges():
            out.append(
                f'<line x1="{_fmt(pts[u][0])}" y1="{_fmt(pts[u][1])}" '
                f'x2="{_fmt(pts[v][0])}" y2="{_fmt(pts[v][1])}" '
                'stroke="#2f5f8f" stroke-width="1.1"/>'
            )
    if highlight_path:
        coords = " ".join(
            f"{_fmt(pts[i][0])},{_fmt(pts[i][1])}" for i in highlight_path
        )
        out.append(
            f'<polyline points="{coords}" fill="none" stroke="#c0392b" '
            'stroke-width="2.6" stroke-linecap="round"/>'
        )
    radius = max(2.4, min(4.5, 120.0 / max(scene.n, 1)))
    for x, y in pts:
        out.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" '
            'fill="#1d1d1f"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
