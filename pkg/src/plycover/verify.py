"""Coverage, membership and exact ply of closed covers.

Ply is the maximum depth over the whole space; membership is the maximum
depth over the input points only.  Depth is evaluated on finite candidate
sets that provably contain a deepest point:

* boxes: the deepest region is a box whose lower corner takes, per axis,
  the lower coordinate of some input box;
* disks: a nonempty intersection of disks either has a vertex (a pairwise
  boundary intersection) or is a whole disk, which contains its centre;
* convex polygons: a nonempty intersection is a convex polygon whose
  vertices are polygon vertices or pairwise edge intersections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .boxcover import BoxCover
from .diskcover import DiskCover
from .geom import (
    TAU_GEOM,
    TAU_ORIENT,
    ConvexPolygon,
    Disk,
    HyperBox,
    PlacedPolygon,
    circle_intersections,
    convex_polygons_intersection_points,
    point_set,
)
from .polycover import PolygonCover
from .tilecover import TileCover


class UnsupportedCover(TypeError):
    pass


@dataclass
class PlyReport:
    ply: int
    witness: tuple | None
    membership: int = 0
    uncovered: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.uncovered

    def to_dict(self) -> dict:
        return {
            "ply": self.ply,
            "witness": list(self.witness) if self.witness is not None else None,
            "membership": self.membership,
            "uncovered": [list(p) for p in self.uncovered],
            "valid": self.valid,
        }


def shapes_of(cover) -> tuple:
    """Normalize any supported cover into ``(kind, objects)``.

    ``kind`` is one of ``"box"``, ``"disk"``, ``"polygon"`` or ``"empty"``.
    """
    if isinstance(cover, BoxCover):
        objs = cover.boxes()
        return ("box", objs) if objs else ("empty", [])
    if isinstance(cover, DiskCover):
        return ("disk", list(cover.disks)) if cover.disks else ("empty", [])
    if isinstance(cover, PolygonCover):
        objs = cover.placed()
        return ("polygon", objs) if objs else ("empty", [])
    if isinstance(cover, TileCover):
        if not cover.cells:
            return ("empty", [])
        if cover.tile.kind == "square":
            s = cover.emitted_size
            return ("box", [HyperBox(lo, (s, s)) for lo in cover.box_lowers()])
        return ("polygon", cover.polygons())
    objs = list(cover)
    if not objs:
        return ("empty", [])
    kinds = set()
    for o in objs:
        if isinstance(o, HyperBox):
            kinds.add("box")
        elif isinstance(o, Disk):
            kinds.add("disk")
        elif isinstance(o, (PlacedPolygon, ConvexPolygon)):
            kinds.add("polygon")
        else:
            raise UnsupportedCover(f"unsupported cover object {type(o).__name__}")
    if len(kinds) > 1:
        raise UnsupportedCover(f"mixed shapes in one cover: {sorted(kinds)}")
    kind = kinds.pop()
    if kind == "polygon":
        objs = [o if isinstance(o, PlacedPolygon) else o.translated((0.0, 0.0)) for o in objs]
    if kind == "box" and len({b.dim for b in objs}) > 1:
        raise UnsupportedCover("boxes of mixed dimension")
    return kind, objs


# ---------------------------------------------------------------- depth counts


def _box_arrays(boxes):
    lo = np.array([b.lower for b in boxes], dtype=float)
    hi = np.array([b.upper for b in boxes], dtype=float)
    return lo, hi


def _box_depths(q: np.ndarray, lo: np.ndarray, hi: np.ndarray, chunk: int = 4096) -> np.ndarray:
    out = np.empty(len(q), dtype=int)
    for s in range(0, len(q), chunk):
        qq = q[s : s + chunk, None, :]
        inside = ((qq >= lo[None]) & (qq <= hi[None])).all(axis=2)
        out[s : s + chunk] = inside.sum(axis=1)
    return out


def _disk_depths(q: np.ndarray, disks, tol: float = TAU_GEOM) -> np.ndarray:
    centers = np.array([d.center for d in disks])
    radii = np.array([d.radius for d in disks])
    tree = cKDTree(centers)
    out = np.zeros(len(q), dtype=int)
    for i, near in enumerate(tree.query_ball_point(q, radii.max() + tol)):
        if near:
            near = np.asarray(near)
            dist = np.hypot(*(centers[near] - q[i]).T)
            out[i] = int((dist <= radii[near] + tol).sum())
    return out


def _poly_arrays(polys):
    verts = [np.array(p.vertices) for p in polys]
    return verts, np.array([v.min(axis=0) for v in verts]), np.array([v.max(axis=0) for v in verts])


def _poly_depths(q: np.ndarray, polys, tol: float = TAU_ORIENT) -> np.ndarray:
    verts, bmin, bmax = _poly_arrays(polys)
    out = np.zeros(len(q), dtype=int)
    for v, lo, hi in zip(verts, bmin, bmax):
        cand = np.flatnonzero(((q >= lo - tol) & (q <= hi + tol)).all(axis=1))
        if cand.size == 0:
            continue
        a, b = v, np.roll(v, -1, axis=0)
        e = b - a
        elen = np.maximum(np.hypot(e[:, 0], e[:, 1]), 1.0)
        qq = q[cand]
        cross = e[None, :, 0] * (qq[:, None, 1] - a[None, :, 1]) - e[None, :, 1] * (qq[:, None, 0] - a[None, :, 0])
        inside = (cross >= -tol * elen[None]).all(axis=1)
        out[cand[inside]] += 1
    return out


def depths(points, cover) -> np.ndarray:
    """Number of cover objects containing each query point (closed)."""
    kind, objs = shapes_of(cover)
    q = np.asarray(points, dtype=float)
    if q.size == 0:
        return np.zeros(0, dtype=int)
    if q.ndim == 1:
        q = q[None]
    if kind == "empty":
        return np.zeros(len(q), dtype=int)
    if kind == "box":
        if q.shape[1] != objs[0].dim:
            raise ValueError("query points and boxes differ in dimension")
        return _box_depths(q, *_box_arrays(objs))
    if kind == "disk":
        return _disk_depths(q, objs)
    return _poly_depths(q, objs)


def _lexmax(cands: np.ndarray, d: np.ndarray) -> tuple:
    best = d.max()
    hits = cands[d == best]
    order = np.lexsort(hits.T[::-1])
    return int(best), tuple(float(c) for c in hits[order[0]])


# -------------------------------------------------------------------- box ply


class _MaxTree:
    """Range-add / global-max segment tree reporting the leftmost argmax."""

    def __init__(self, n: int):
        self.n = n
        size = 1
        while size < n:
            size *= 2
        self.size = size
        self.mx = [0] * (2 * size)
        self.arg = [0] * (2 * size)
        self.lazy = [0] * (2 * size)
        for i in range(size):
            self.arg[size + i] = i
            if i >= n:
                self.mx[size + i] = -(10**9)
        for v in range(size - 1, 0, -1):
            self._pull(v)

    def _pull(self, v):
        l, r = 2 * v, 2 * v + 1
        if self.mx[l] >= self.mx[r]:
            self.mx[v], self.arg[v] = self.mx[l] + self.lazy[v], self.arg[l]
        else:
            self.mx[v], self.arg[v] = self.mx[r] + self.lazy[v], self.arg[r]

    def add(self, lo: int, hi: int, val: int, v: int = 1, vl: int = 0, vr: int | None = None):
        if vr is None:
            vr = self.size - 1
        if hi < vl or vr < lo:
            return
        if lo <= vl and vr <= hi:
            self.mx[v] += val
            self.lazy[v] += val
            return
        mid = (vl + vr) // 2
        self.add(lo, hi, val, 2 * v, vl, mid)
        self.add(lo, hi, val, 2 * v + 1, mid + 1, vr)
        self._pull(v)

    def top(self) -> tuple:
        return self.mx[1], self.arg[1]


def box_ply_sweep_2d(boxes) -> tuple:
    """Exact ply of closed rectangles by an x-sweep over a y segment tree.

    Returns:
        (ply, witness) with the lexicographically smallest witness among
        lower-coordinate candidates.
    """
    lo, hi = _box_arrays(boxes)
    ys = np.unique(np.concatenate([lo[:, 1], hi[:, 1]]))
    ylo = np.searchsorted(ys, lo[:, 1])
    yhi = np.searchsorted(ys, hi[:, 1])
    events = [(lo[i, 0], 0, i) for i in range(len(lo))] + [(hi[i, 0], 1, i) for i in range(len(lo))]
    events.sort()
    tree = _MaxTree(len(ys))
    best, witness = 0, None
    k = 0
    while k < len(events):
        x = events[k][0]
        added = False
        # at one x, insert every box starting there before removing any
        while k < len(events) and events[k][0] == x and events[k][1] == 0:
            i = events[k][2]
            tree.add(int(ylo[i]), int(yhi[i]), 1)
            added = True
            k += 1
        if added:
            m, j = tree.top()
            if m > best:
                best, witness = m, (float(x), float(ys[j]))
        while k < len(events) and events[k][0] == x and events[k][1] == 1:
            i = events[k][2]
            tree.add(int(ylo[i]), int(yhi[i]), -1)
            k += 1
    return best, witness


def _box_ply_rec(lo: np.ndarray, hi: np.ndarray, idx: np.ndarray, axis: int, prefix: list, best: list):
    d = lo.shape[1]
    for c in np.unique(lo[idx, axis]):
        active = idx[(lo[idx, axis] <= c) & (hi[idx, axis] >= c)]
        if active.size <= best[0] and not (best[1] is None):
            continue
        if axis == d - 1:
            if active.size > best[0]:
                best[0], best[1] = int(active.size), tuple(prefix + [float(c)])
        else:
            _box_ply_rec(lo, hi, active, axis + 1, prefix + [float(c)], best)


def box_ply_recursive(boxes) -> tuple:
    """Exact ply of closed d-dimensional boxes by axis-wise candidate recursion."""
    lo, hi = _box_arrays(boxes)
    best = [0, None]
    _box_ply_rec(lo, hi, np.arange(len(lo)), 0, [], best)
    return best[0], best[1]


def box_ply_candidates(boxes) -> tuple:
    """Exact ply by the full grid of lower and upper coordinates (small inputs)."""
    lo, hi = _box_arrays(boxes)
    axes = [np.unique(np.concatenate([lo[:, i], hi[:, i]])) for i in range(lo.shape[1])]
    grid = np.array(list(itertools.product(*axes)))
    return _lexmax(grid, _box_depths(grid, lo, hi))


# ------------------------------------------------------------ disk / polygon


def disk_candidates(disks, tol: float = TAU_GEOM) -> np.ndarray:
    centers = np.array([d.center for d in disks])
    radii = np.array([d.radius for d in disks])
    cands = [tuple(c) for c in centers]
    tree = cKDTree(centers)
    for i, j in sorted(tree.query_pairs(2 * radii.max() + tol)):
        cands.extend(circle_intersections(disks[i].center, disks[j].center, radii[i], radii[j], tol))
    return np.array(cands)


def polygon_candidates(polys) -> np.ndarray:
    verts, bmin, bmax = _poly_arrays(polys)
    cands = [tuple(v) for vs in verts for v in vs]
    for i in range(len(polys)):
        # only pairs whose bounding boxes meet can have boundary contacts
        near = np.flatnonzero(
            (bmin[i + 1 :] <= bmax[i] + TAU_GEOM).all(axis=1) & (bmax[i + 1 :] >= bmin[i] - TAU_GEOM).all(axis=1)
        )
        for j in near + i + 1:
            cands.extend(convex_polygons_intersection_points(polys[i], polys[j]))
    return np.array(cands)


# ------------------------------------------------------------------- public


def check_coverage(P, cover) -> list:
    """Input points not contained in any cover object."""
    pts = point_set(P)
    if pts.shape[0] == 0:
        return []
    d = depths(pts, cover)
    return [tuple(float(c) for c in p) for p in pts[d == 0]]


def membership(P, cover) -> tuple:
    """Maximum depth over the input points, with the lexicographically first argmax."""
    pts = point_set(P)
    if pts.shape[0] == 0:
        return 0, None
    return _lexmax(pts, depths(pts, cover))


def exact_ply(cover, P=None, method: str = "auto") -> PlyReport:
    """Exact maximum depth of a cover over the whole space.

    Args:
        cover: any supported cover or list of one kind of shape.
        P: optional input points; fills in ``membership`` and ``uncovered``.
        method: for boxes, ``"sweep"`` (2-D only), ``"recursive"``,
            ``"candidates"`` or ``"auto"``.
    """
    kind, objs = shapes_of(cover)
    if kind == "empty":
        ply, witness = 0, None
    elif kind == "box":
        dim = objs[0].dim
        if method == "auto":
            method = "sweep" if dim == 2 else "recursive"
        if method == "sweep":
            if dim != 2:
                raise ValueError("sweep method needs 2-D boxes")
            ply, witness = box_ply_sweep_2d(objs)
        elif method == "recursive":
            ply, witness = box_ply_recursive(objs)
        elif method == "candidates":
            ply, witness = box_ply_candidates(objs)
        else:
            raise ValueError(f"unknown method {method!r}")
    elif kind == "disk":
        cands = disk_candidates(objs)
        ply, witness = _lexmax(cands, _disk_depths(cands, objs))
    else:
        cands = polygon_candidates(objs)
        ply, witness = _lexmax(cands, _poly_depths(cands, objs))
    report = PlyReport(ply, witness)
    if P is not None:
        report.membership, _ = membership(P, cover)
        report.uncovered = check_coverage(P, cover)
    return report
