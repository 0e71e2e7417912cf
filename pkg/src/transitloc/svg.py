"""Static SVG figure of a solved instance.

Output is a pure function of the inputs: fixed element order and every
coordinate printed with six decimals.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Optional

from .captation import CaptationPartition, region_boundary
from .geometry import orientation_reflection
from .median import median_rectangle
from .model import Instance, Point, Solution

STYLE = """
.quadrant-axis { stroke: #999; stroke-dasharray: 4 3; vector-effect: non-scaling-stroke; }
.median { fill: #fde68a; fill-opacity: 0.5; stroke: #b45309; vector-effect: non-scaling-stroke; }
.captation-boundary { fill: none; stroke: #2563eb; stroke-width: 1.5; vector-effect: non-scaling-stroke; }
.segment { stroke: #dc2626; stroke-width: 2.5; vector-effect: non-scaling-stroke; }
.demand { fill: #6b7280; fill-opacity: 0.8; }
.demand.captured { fill: #2563eb; }
.entrance { fill: #dc2626; }
.facility { fill: #111827; }
"""

SIZE = 600.0


def _num(v: float) -> str:
    return f"{round(v, 6) + 0.0:.6f}"


def _pts(points: Iterable[Point]) -> str:
    return " ".join(f"{_num(x)},{_num(-y)}" for x, y in points)


def render_svg(instance: Instance, solution: Solution, partition: CaptationPartition) -> str:
    c = instance.coords
    seg = solution.segment
    rect = median_rectangle(instance)
    xs = list(c[:, 0]) + [seg.entrance[0], seg.facility[0], solution.anchor[0]]
    ys = list(c[:, 1]) + [seg.entrance[1], seg.facility[1], solution.anchor[1]]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    pad = 0.1 * span
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    unit = span / 100.0  # marker scale in data units

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(SIZE)}" height="{_num(SIZE)}" '
        f'viewBox="{_num(x0)} {_num(-y1)} {_num(x1 - x0)} {_num(y1 - y0)}">',
        f"<style>{STYLE}</style>",
    ]
    t = solution.anchor
    out.append(f'<line class="quadrant-axis" x1="{_num(x0)}" y1="{_num(-t[1])}" x2="{_num(x1)}" y2="{_num(-t[1])}"/>')
    out.append(f'<line class="quadrant-axis" x1="{_num(t[0])}" y1="{_num(-y0)}" x2="{_num(t[0])}" y2="{_num(-y1)}"/>')
    (rx0, rx1), (ry0, ry1) = rect.x_interval, rect.y_interval
    out.append(
        f'<rect class="median" x="{_num(rx0)}" y="{_num(-ry1)}" width="{_num(rx1 - rx0)}" height="{_num(ry1 - ry0)}"/>'
    )

    if instance.length > 0:
        refl = orientation_reflection(solution.orientation)
        e_c, x_c = refl(seg.entrance), refl(seg.facility)
        line = region_boundary(e_c, x_c, instance.length, instance.speedup, reach=span * 2)
        out.append(f'<polyline class="captation-boundary" points="{_pts(refl(p) for p in line)}"/>')

    e, x = seg.entrance, seg.facility
    out.append(f'<line class="segment" x1="{_num(x[0])}" y1="{_num(-x[1])}" x2="{_num(e[0])}" y2="{_num(-e[1])}"/>')

    captured = set(partition.captured)
    wmax = float(instance.weights.max())
    for i, p in enumerate(instance.points):
        cls = "demand captured" if i in captured else "demand"
        r = 1.5 * unit * math.sqrt(p.w / wmax)
        out.append(f'<circle class="{cls}" data-index="{i}" cx="{_num(p.x)}" cy="{_num(-p.y)}" r="{_num(r)}"/>')

    s = 1.2 * unit
    out.append(f'<rect class="entrance" x="{_num(e[0] - s)}" y="{_num(-e[1] - s)}" width="{_num(2 * s)}" height="{_num(2 * s)}"/>')
    tri = [(x[0], x[1] + 1.5 * s), (x[0] - 1.3 * s, x[1] - 0.75 * s), (x[0] + 1.3 * s, x[1] - 0.75 * s)]
    out.append(f'<polygon class="facility" points="{_pts(tri)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(instance: Instance, solution: Solution, partition: CaptationPartition, path: Optional[str | Path]) -> str:
    """Write the figure to ``path`` (if given) and return the SVG text."""
    text = render_svg(instance, solution, partition)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
