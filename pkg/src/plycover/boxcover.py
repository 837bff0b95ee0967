"""1-ply covers by fixed-size axis-aligned squares, rectangles and hyperboxes.

The recursion separates the highest dimension into disjoint walls, then
recurses on each wall with one fewer dimension.  In the plane, points are
split into vertical strips by x and every strip is split by y.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cover1d import IntervalCover, separate
from .geom import DimensionError, HyperBox, point_set


@dataclass
class StripNode:
    """One level of the recursion: the interval cover on ``axis`` and its walls."""

    axis: int
    cover: IntervalCover
    walls: list = field(default_factory=list)  # list[Wall]


@dataclass
class Wall:
    interval: tuple
    points: np.ndarray  # indices into the input point array
    child: StripNode | None = None


@dataclass
class BoxCover:
    dim: int
    lengths: tuple
    placements: list  # lower corners, tuples of floats
    strip_tree: StripNode | None = None
    points: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.placements)

    def boxes(self) -> list:
        return [HyperBox(p, self.lengths) for p in self.placements]


def _axis_order(dim: int) -> list:
    # highest dimension first down to 3, then x, then y
    if dim == 1:
        return [0]
    return list(range(dim - 1, 1, -1)) + [0, 1]


def _cover(P: np.ndarray, idx: np.ndarray, axes: list, lengths: tuple, lower: list, out: list) -> StripNode:
    axis = axes[0]
    coords = P[idx, axis]
    cover = separate(coords, lengths[axis])
    which = cover.assign(coords)
    assert (which >= 0).all()
    order = np.argsort(which, kind="stable")
    bounds = np.searchsorted(which[order], np.arange(len(cover) + 1))
    node = StripNode(axis, cover)
    for k, left in enumerate(cover.lefts):
        members = idx[order[bounds[k] : bounds[k + 1]]]
        assert members.size > 0, "empty wall"
        wall = Wall((left, left + cover.length), members)
        lower[axis] = left
        if len(axes) > 1:
            wall.child = _cover(P, members, axes[1:], lengths, lower, out)
        else:
            out.append(tuple(lower))
        node.walls.append(wall)
    return node


def hyperbox_cover(P, lengths) -> BoxCover:
    """1-ply cover of ``P`` by boxes with side lengths ``lengths``.

    The size is at most ``2**(d-1)`` times the minimum 1-ply cover size.
    """
    lengths = tuple(float(v) for v in lengths)
    if not lengths:
        raise DimensionError("need at least one box length")
    if not all(v > 0 for v in lengths):
        raise ValueError("box lengths must be positive")
    d = len(lengths)
    pts = point_set(P, d)
    if pts.shape[0] and pts.shape[1] != d:
        raise DimensionError(f"points are {pts.shape[1]}-D but {d} lengths given")
    if pts.shape[0] == 0:
        return BoxCover(d, lengths, [], None, pts.reshape(0, d))
    out: list = []
    tree = _cover(pts, np.arange(pts.shape[0]), _axis_order(d), lengths, [0.0] * d, out)
    return BoxCover(d, lengths, out, tree, pts)


def rect_cover(P, a: float, b: float) -> BoxCover:
    """1-ply cover by ``a x b`` rectangles: x-strips of width a, then y within each strip."""
    if not (a > 0 and b > 0):
        raise ValueError("rectangle sides must be positive")
    return hyperbox_cover(P, (a, b))


def square_cover(P) -> BoxCover:
    return hyperbox_cover(P, (1.0, 1.0))
