"""Geometric primitives and closed-set predicates shared by the covering modules.

All objects are closed sets.  Coordinates are assumed well scaled
(``|x| <= 1e6``); orientation signs and coordinate comparisons use the
absolute tolerances ``TAU_ORIENT`` and ``TAU_GEOM``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

TAU_ORIENT = 1e-9
TAU_GEOM = 1e-9

UNIT_DISK_RADIUS = 0.5


class DimensionError(ValueError):
    """Raised when objects of different dimensions are combined."""


Point = tuple  # tuple[float, ...]


def as_point(coords: Iterable[float]) -> Point:
    p = tuple(float(c) for c in coords)
    if not p:
        raise DimensionError("a point needs at least one coordinate")
    if not all(math.isfinite(c) for c in p):
        raise ValueError(f"non-finite coordinate in {p}")
    return p


def point_set(points: Iterable[Iterable[float]], dim: int | None = None) -> np.ndarray:
    """Normalize input points to a deduplicated ``(n, dim)`` float array.

    Rows are sorted lexicographically so that every algorithm sees the same
    input regardless of the caller's ordering.
    """
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
        if arr.size == 0:
            return np.zeros((0, dim or (arr.shape[1] if arr.ndim == 2 else 0)))
        if arr.ndim != 2:
            raise DimensionError("point array must be 2-D (n, dim)")
        if dim is not None and arr.shape[1] != dim:
            raise DimensionError(f"expected {dim}-D points, got {arr.shape[1]}-D")
        if not np.all(np.isfinite(arr)):
            raise ValueError("non-finite coordinate")
        return np.unique(arr, axis=0)
    rows = [as_point(p) for p in points]
    if not rows:
        return np.zeros((0, dim or 0))
    d = len(rows[0])
    if any(len(r) != d for r in rows):
        raise DimensionError("points of mixed dimension")
    if dim is not None and d != dim:
        raise DimensionError(f"expected {dim}-D points, got {d}-D")
    return np.array(sorted(set(rows)), dtype=float)


@dataclass(frozen=True)
class Interval:
    left: float
    length: float

    def __post_init__(self):
        if not self.length > 0:
            raise ValueError("interval length must be positive")

    @property
    def right(self) -> float:
        return self.left + self.length

    def __contains__(self, x: float) -> bool:
        return self.left <= x <= self.right


@dataclass(frozen=True)
class HyperBox:
    lower: Point
    lengths: tuple

    def __post_init__(self):
        object.__setattr__(self, "lower", as_point(self.lower))
        object.__setattr__(self, "lengths", tuple(float(v) for v in self.lengths))
        if len(self.lower) != len(self.lengths):
            raise DimensionError("lower corner and lengths differ in dimension")
        if not all(v > 0 for v in self.lengths):
            raise ValueError("box lengths must be positive")

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def upper(self) -> Point:
        return tuple(lo + ln for lo, ln in zip(self.lower, self.lengths))


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float = UNIT_DISK_RADIUS

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if len(self.center) != 2:
            raise DimensionError("disks are 2-D")
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")


def orient(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> float:
    """Twice the signed area of triangle abc; positive when counter-clockwise."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _normalize_vertices(vertices) -> tuple:
    pts = [as_point(v) for v in vertices]
    if any(len(p) != 2 for p in pts):
        raise DimensionError("polygon vertices must be 2-D")
    # drop repeated vertices
    out = []
    for p in pts:
        if not out or math.dist(out[-1], p) > TAU_GEOM:
            out.append(p)
    if len(out) > 1 and math.dist(out[0], out[-1]) <= TAU_GEOM:
        out.pop()
    area2 = sum(orient((0.0, 0.0), out[i], out[(i + 1) % len(out)]) for i in range(len(out)))
    if area2 < 0:
        out.reverse()
    # drop collinear vertices until stable
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            a, b, c = out[i - 1], out[i], out[(i + 1) % len(out)]
            if abs(orient(a, b, c)) <= TAU_ORIENT * max(1.0, math.dist(a, c)):
                del out[i]
                changed = True
                break
    if len(out) < 3:
        raise ValueError("polygon is degenerate (fewer than 3 non-collinear vertices)")
    for i in range(len(out)):
        if orient(out[i - 1], out[i], out[(i + 1) % len(out)]) <= 0:
            raise ValueError("polygon is not convex")
    return tuple(out)


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon with counter-clockwise vertices.

    Clockwise input is reversed; repeated and collinear vertices are removed.
    """

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", _normalize_vertices(self.vertices))

    @property
    def m(self) -> int:
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def translated(self, t: Sequence[float]) -> "PlacedPolygon":
        return PlacedPolygon(self, (float(t[0]), float(t[1])))

    def rotated(self, theta: float) -> "ConvexPolygon":
        return ConvexPolygon(rotate(self.vertices, theta))

    def as_array(self) -> np.ndarray:
        return np.array(self.vertices)


@dataclass(frozen=True)
class PlacedPolygon:
    polygon: ConvexPolygon
    translation: tuple

    @property
    def vertices(self) -> tuple:
        tx, ty = self.translation
        return tuple((x + tx, y + ty) for x, y in self.polygon.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def rotate(points, theta: float) -> list:
    c, s = math.cos(theta), math.sin(theta)
    return [(c * x - s * y, s * x + c * y) for x, y in points]


def square_polygon(side: float = 1.0, lower=(0.0, 0.0)) -> ConvexPolygon:
    x, y = lower
    return ConvexPolygon([(x, y), (x + side, y), (x + side, y + side), (x, y + side)])


def regular_polygon(k: int, circumradius: float = 1.0, phase: float = 0.0) -> ConvexPolygon:
    return ConvexPolygon(
        [
            (circumradius * math.cos(phase + 2 * math.pi * i / k), circumradius * math.sin(phase + 2 * math.pi * i / k))
            for i in range(k)
        ]
    )


def point_in_box(p: Sequence[float], b: HyperBox) -> bool:
    if len(p) != b.dim:
        raise DimensionError(f"point has dim {len(p)}, box has dim {b.dim}")
    return all(lo <= x <= lo + ln for x, lo, ln in zip(p, b.lower, b.lengths))


def point_in_disk(p: Sequence[float], d: Disk, tol: float = TAU_GEOM) -> bool:
    # tolerance absorbs rounding for points placed exactly on a circumcircle
    return math.hypot(p[0] - d.center[0], p[1] - d.center[1]) <= d.radius + tol


def point_in_convex_polygon(p: Sequence[float], c, tol: float = TAU_ORIENT) -> bool:
    """Closed containment: p is left of or on every directed CCW edge."""
    for a, b in c.edges():
        if orient(a, b, p) < -tol * max(1.0, math.dist(a, b)):
            return False
    return True


def boxes_disjoint(a: HyperBox, b: HyperBox) -> bool:
    if a.dim != b.dim:
        raise DimensionError("boxes of different dimension")
    return any(
        alo + aln < blo or blo + bln < alo
        for alo, aln, blo, bln in zip(a.lower, a.lengths, b.lower, b.lengths)
    )


def disks_intersect(a: Disk, b: Disk) -> bool:
    return math.dist(a.center, b.center) <= a.radius + b.radius


def segment_intersections(p1, p2, q1, q2, tol: float = TAU_GEOM) -> list:
    """Intersection points of closed segments p1p2 and q1q2.

    Collinear overlaps report the endpoints of each segment lying on the other.
    """
    r = (p2[0] - p1[0], p2[1] - p1[1])
    s = (q2[0] - q1[0], q2[1] - q1[1])
    denom = r[0] * s[1] - r[1] * s[0]
    qp = (q1[0] - p1[0], q1[1] - p1[1])
    lr, ls = math.hypot(*r), math.hypot(*s)
    if abs(denom) <= TAU_ORIENT * lr * ls:
        # parallel: only collinear overlaps produce points
        if abs(qp[0] * r[1] - qp[1] * r[0]) > tol * max(lr, 1.0):
            return []
        out = []
        for cand, (a, b) in ((q1, (p1, p2)), (q2, (p1, p2)), (p1, (q1, q2)), (p2, (q1, q2))):
            if _on_segment(cand, a, b, tol) and cand not in out:
                out.append(cand)
        return out
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    et, eu = tol / max(lr, tol), tol / max(ls, tol)
    if -et <= t <= 1 + et and -eu <= u <= 1 + eu:
        t = min(1.0, max(0.0, t))
        return [(p1[0] + t * r[0], p1[1] + t * r[1])]
    return []


def _on_segment(p, a, b, tol) -> bool:
    if abs(orient(a, b, p)) > tol * max(math.dist(a, b), 1.0):
        return False
    return (
        min(a[0], b[0]) - tol <= p[0] <= max(a[0], b[0]) + tol
        and min(a[1], b[1]) - tol <= p[1] <= max(a[1], b[1]) + tol
    )


def convex_polygons_intersection_points(a, b) -> list:
    """All boundary-boundary intersection points of two (placed) polygons."""
    out = []
    for p1, p2 in a.edges():
        for q1, q2 in b.edges():
            for x in segment_intersections(p1, p2, q1, q2):
                if not any(math.dist(x, y) <= TAU_GEOM for y in out):
                    out.append(x)
    return out


def circle_intersections(c1, c2, r1: float, r2: float, tol: float = TAU_GEOM) -> list:
    """Boundary intersection points of two circles; tangency yields one point."""
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    d = math.hypot(dx, dy)
    if d <= TAU_GEOM or d > r1 + r2 + tol or d < abs(r1 - r2) - tol:
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    h2 = r1 * r1 - a * a
    mx, my = c1[0] + a * dx / d, c1[1] + a * dy / d
    if h2 <= tol * max(r1, 1.0):
        return [(mx, my)]
    h = math.sqrt(h2)
    return [(mx - h * dy / d, my + h * dx / d), (mx + h * dy / d, my - h * dx / d)]


def clip_halfplane(poly: list, a: Sequence[float], b: Sequence[float]) -> list:
    """Clip a convex polygon (vertex list) to the closed half-plane left of a->b."""
    if not poly:
        return []
    out = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        oc, on = orient(a, b, cur), orient(a, b, nxt)
        if oc >= 0:
            out.append(cur)
        if (oc > 0 > on) or (oc < 0 < on):
            t = oc / (oc - on)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return out


def convex_intersection(polys: Sequence[Sequence[Sequence[float]]]) -> list:
    """Intersection of convex CCW polygons by successive half-plane clipping.

    Returns a (possibly degenerate or empty) vertex list.
    """
    if not polys:
        return []
    cur = [tuple(v) for v in polys[0]]
    for poly in polys[1:]:
        m = len(poly)
        for i in range(m):
            cur = clip_halfplane(cur, poly[i], poly[(i + 1) % m])
            if not cur:
                return []
    return cur
