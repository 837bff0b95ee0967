"""Deterministic SVG rendering of 2-D instances and covers."""

from __future__ import annotations

from pathlib import Path

from .geom import Disk, HyperBox, PlacedPolygon
from .io import CoverDocument, Instance
from .runner import cover_objects

MARGIN = 0.25
SCALE = 50.0  # pixels per plane unit


def _f(x: float) -> str:
    return f"{x:.6g}"


def _bounds(points, objects):
    xs, ys = [], []
    for p in points:
        xs.append(p[0])
        ys.append(p[1])
    for o in objects:
        if isinstance(o, HyperBox):
            xs += [o.lower[0], o.upper[0]]
            ys += [o.lower[1], o.upper[1]]
        elif isinstance(o, Disk):
            xs += [o.center[0] - o.radius, o.center[0] + o.radius]
            ys += [o.center[1] - o.radius, o.center[1] + o.radius]
        else:
            for x, y in o.vertices:
                xs.append(x)
                ys.append(y)
    if not xs:
        return 0.0, 0.0, 1.0, 1.0
    return min(xs) - MARGIN, min(ys) - MARGIN, max(xs) + MARGIN, max(ys) + MARGIN


def svg_string(instance: Instance, cover: CoverDocument | None = None) -> str:
    """SVG text: points as dots, cover objects as outlines; y axis points up."""
    if instance.dim != 2:
        raise ValueError(f"can only render 2-D instances, got dim {instance.dim}")
    objects = cover_objects(cover) if cover is not None else []
    x0, y0, x1, y1 = _bounds(instance.points, objects)
    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE

    def X(x):
        return _f((x - x0) * SCALE)

    def Y(y):
        return _f((y1 - y) * SCALE)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" viewBox="0 0 {_f(w)} {_f(h)}">',
        '<g id="cover" fill="none" stroke="#1f77b4" stroke-width="1">',
    ]
    for o in objects:
        if isinstance(o, HyperBox):
            lines.append(
                f'<rect x="{X(o.lower[0])}" y="{Y(o.upper[1])}" '
                f'width="{_f(o.lengths[0] * SCALE)}" height="{_f(o.lengths[1] * SCALE)}"/>'
            )
        elif isinstance(o, Disk):
            lines.append(f'<circle cx="{X(o.center[0])}" cy="{Y(o.center[1])}" r="{_f(o.radius * SCALE)}"/>')
        elif isinstance(o, PlacedPolygon):
            pts = " ".join(f"{X(x)},{Y(y)}" for x, y in o.vertices)
            lines.append(f'<polygon points="{pts}"/>')
    lines.append("</g>")
    lines.append('<g id="points" fill="#d62728" stroke="none">')
    for p in instance.points:
        lines.append(f'<circle cx="{X(p[0])}" cy="{Y(p[1])}" r="2"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(instance: Instance, cover: CoverDocument | None, path) -> Path:
    path = Path(path)
    path.write_text(svg_string(instance, cover))
    return path
