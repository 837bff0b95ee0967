"""4-ply covers by translates of a convex polygon.

An approximating pair of homothetic rectangles ``inner ⊆ C ⊆ outer`` with
side ratio at most 2 is computed first.  The points are then covered 1-ply
by copies of the inner rectangle in the pair's rotated frame, and every inner
rectangle is replaced by the translate of ``C`` that carries it.
"""

from __future__ import annotations

import math
from itertools import combinations
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, minimize_scalar

from .boxcover import BoxCover, rect_cover
from .geom import ConvexPolygon, PlacedPolygon, point_set, rotate

MAX_RATIO = 2.0
RATIO_TOL = 1e-9
# relative shrink of the inner rectangle against float round-off
SCALE_SAFETY = 1e-12
SWEEP_GRID = 180
SWEEP_REFINE = 4


class ApproximationError(RuntimeError):
    """No candidate orientation produced a pair with ratio <= 2."""


@dataclass(frozen=True)
class Rect:
    """Rectangle rotated by ``angle``; ``half`` is measured in the rotated frame."""

    center: tuple
    half: tuple
    angle: float

    def corners(self) -> list:
        hx, hy = self.half
        local = [(-hx, -hy), (hx, -hy), (hx, hy), (-hx, hy)]
        cx, cy = self.center
        return [(x + cx, y + cy) for x, y in rotate(local, self.angle)]

    @property
    def aspect(self) -> float:
        return self.half[0] / self.half[1]


@dataclass(frozen=True)
class ApproximatingPair:
    """Homothetic rectangles with ``inner ⊆ C ⊆ outer``.

    ``outer`` is the bounding rectangle of ``C`` in the pair's orientation.
    ``concentric_outer`` is ``outer`` shifted onto the centre of ``inner``;
    shifting every outer rectangle by the same vector does not change ply.
    """

    angle: float
    inner: Rect
    outer: Rect
    ratio: float
    inner_lower_rot: tuple  # inner lower-left corner in the rotated frame

    @property
    def concentric_outer(self) -> Rect:
        return Rect(self.inner.center, self.outer.half, self.angle)

    @property
    def outer_shift(self) -> tuple:
        return (self.outer.center[0] - self.inner.center[0], self.outer.center[1] - self.inner.center[1])

    @property
    def inner_size(self) -> tuple:
        return (2 * self.inner.half[0], 2 * self.inner.half[1])

    @property
    def outer_size(self) -> tuple:
        return (2 * self.outer.half[0], 2 * self.outer.half[1])


def candidate_angles(C: ConvexPolygon) -> list:
    """Diameter direction plus every edge direction, reduced modulo pi/2."""
    v = C.as_array()
    diff = v[:, None, :] - v[None, :, :]
    d2 = (diff**2).sum(axis=2)
    i, j = np.unravel_index(np.argmax(d2), d2.shape)
    angles = [math.atan2(*(v[j] - v[i])[::-1])]
    for a, b in C.edges():
        angles.append(math.atan2(b[1] - a[1], b[0] - a[0]))
    out = []
    for a in angles:
        a = a % (math.pi / 2)
        if not any(abs(a - b) < 1e-12 for b in out):
            out.append(a)
    return out


def max_inscribed_scale(vertices, w: float, h: float) -> tuple:
    """Largest ``s`` such that an axis-parallel ``s*w x s*h`` rectangle fits in the polygon.

    Solves the linear program over (corner x, corner y, s): for every edge
    with outward normal n and offset b, the rectangle's support in direction
    n must stay below b.

    Returns:
        (s, lower_corner)
    """
    vs = np.asarray(vertices, dtype=float)
    nxt = np.roll(vs, -1, axis=0)
    e = nxt - vs
    normals = np.stack([e[:, 1], -e[:, 0]], axis=1)  # outward for CCW
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    b = (normals * vs).sum(axis=1)
    support = np.maximum(normals[:, 0] * w, 0) + np.maximum(normals[:, 1] * h, 0)
    # edges parallel to a rectangle side must not constrain the scale through round-off
    support[support <= 1e-12 * (w + h)] = 0.0
    A = np.column_stack([normals, support])
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=A,
        b_ub=b,
        bounds=[(None, None), (None, None), (0, None)],
        method="highs",
    )
    if res.status != 0:
        raise ApproximationError(f"inscribed-rectangle LP failed: {res.message}")
    return _polish(A, b, res)


def _scale_at(A: np.ndarray, b: np.ndarray, p: np.ndarray) -> float:
    # largest scale feasible with the corner fixed at p
    slack = b - A[:, :2] @ p
    free = A[:, 2] == 0
    if (slack[free] < -1e-12).any():
        return -1.0
    sup = A[~free, 2]
    return float((slack[~free] / sup).min()) if sup.size else -1.0


def _polish(A: np.ndarray, b: np.ndarray, res) -> tuple:
    """Re-solve the LP optimum from its tightest constraints.

    The solver's optimum is only accurate to its feasibility tolerance; the
    vertex is recomputed from triples of near-active constraints and the
    scale is re-derived directly from the containment inequalities.
    """
    best_p = np.asarray(res.x[:2])
    best_s = _scale_at(A, b, best_p)
    tight = np.argsort(res.ineqlin.residual)[: min(len(b), 6)]
    for i, j, k in combinations(tight, 3):
        sub = A[[i, j, k]]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, b[[i, j, k]])
        s = _scale_at(A, b, x[:2])
        if s > best_s:
            best_p, best_s = x[:2], s
    return best_s, (float(best_p[0]), float(best_p[1]))


def _pair_at(C: ConvexPolygon, angle: float) -> ApproximatingPair | None:
    rot = np.array(rotate(C.vertices, -angle))
    lo, hi = rot.min(axis=0), rot.max(axis=0)
    w, h = hi - lo
    s, corner = max_inscribed_scale(rot, w, h)
    if s <= 0:
        return None
    s_safe = s * (1 - SCALE_SAFETY)
    # keep the shrunk rectangle centred where the LP optimum was
    pad = (s - s_safe) / 2
    lower = (corner[0] + pad * w, corner[1] + pad * h)
    iw, ih = s_safe * w, s_safe * h
    inner_c_rot = (lower[0] + iw / 2, lower[1] + ih / 2)
    outer_c_rot = ((lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2)
    inner = Rect(tuple(rotate([inner_c_rot], angle)[0]), (iw / 2, ih / 2), angle)
    outer = Rect(tuple(rotate([outer_c_rot], angle)[0]), (w / 2, h / 2), angle)
    return ApproximatingPair(angle, inner, outer, 1.0 / s_safe, lower)


def _candidate_pairs(C: ConvexPolygon) -> list:
    return [_pair_at(C, a) for a in candidate_angles(C)]


def _sweep_pairs(C: ConvexPolygon, grid: int = SWEEP_GRID, refine: int = SWEEP_REFINE) -> list:
    """Pairs from a uniform orientation grid, refined around its best minima."""
    def ratio(a):
        pair = _pair_at(C, a)
        return pair.ratio if pair is not None else math.inf

    step = (math.pi / 2) / grid
    pairs = [_pair_at(C, k * step) for k in range(grid)]
    ratios = [p.ratio if p is not None else math.inf for p in pairs]
    for k in np.argsort(ratios)[:refine]:
        res = minimize_scalar(
            ratio,
            bounds=(k * step - step, k * step + step),
            method="bounded",
            options={"xatol": 1e-13, "maxiter": 200},
        )
        pairs.append(_pair_at(C, float(res.x) % (math.pi / 2)))
    return pairs


def approximating_pair(C: ConvexPolygon) -> ApproximatingPair:
    """Approximating rectangle pair of smallest ratio over the candidate orientations.

    Edge and diameter directions are tried first.  When none of them reaches
    ratio 2, a uniform orientation grid with local refinement is searched;
    the ratio-2 orientation of some polygons lies strictly between edge
    directions.

    Raises:
        ApproximationError: if every candidate has ratio above ``2 + 1e-9``.
    """
    best = None
    tried = []
    for stage in (_candidate_pairs, _sweep_pairs):
        for pair in stage(C):
            if pair is None:
                continue
            tried.append((pair.angle, pair.ratio))
            if best is None or pair.ratio < best.ratio - 1e-12:
                best = pair
        if best is not None and best.ratio <= MAX_RATIO + RATIO_TOL:
            return best
    tried.sort(key=lambda t: t[1])
    raise ApproximationError(
        "no orientation achieved ratio <= 2; best (angle, ratio): "
        + ", ".join(f"({a:.6f}, {r:.9f})" for a, r in tried[:5])
    )


@dataclass
class PolygonCover:
    polygon: ConvexPolygon
    pair: ApproximatingPair
    translations: list
    inner_cover: BoxCover  # inner rectangles in the rotated frame

    def __len__(self) -> int:
        return len(self.translations)

    def placed(self) -> list:
        return [PlacedPolygon(self.polygon, t) for t in self.translations]

    def inner_lowers_rot(self) -> list:
        return list(self.inner_cover.placements)

    def outer_lowers_rot(self, concentric: bool = False) -> list:
        """Lower corners (rotated frame) of the outer rectangle of each translate."""
        pair = self.pair
        iw, ih = pair.inner_size
        ow, oh = pair.outer_size
        if concentric:
            dx, dy = (iw - ow) / 2, (ih - oh) / 2
        else:
            ocx, ocy = rotate([pair.outer.center], -pair.angle)[0]
            dx = ocx - ow / 2 - pair.inner_lower_rot[0]
            dy = ocy - oh / 2 - pair.inner_lower_rot[1]
        return [(x + dx, y + dy) for x, y in self.inner_cover.placements]

    def strips(self) -> list:
        """Placement indices grouped by vertical strip of the inner cover."""
        tree = self.inner_cover.strip_tree
        if tree is None:
            return []
        out, k = [], 0
        for wall in tree.walls:
            n = len(wall.child.walls)
            out.append(list(range(k, k + n)))
            k += n
        return out


def polygon_cover(P, C: ConvexPolygon, pair: ApproximatingPair | None = None) -> PolygonCover:
    """Cover ``P`` by translates of ``C`` with ply at most 4."""
    pts = point_set(P, 2)
    if pair is None:
        pair = approximating_pair(C)
    iw, ih = pair.inner_size
    rot = np.array(rotate(pts.tolist(), -pair.angle)).reshape(-1, 2)
    inner = rect_cover(rot, iw, ih)
    qx, qy = pair.inner_lower_rot
    local = [(x - qx, y - qy) for x, y in inner.placements]
    translations = [tuple(t) for t in rotate(local, pair.angle)]
    return PolygonCover(C, pair, translations, inner)
