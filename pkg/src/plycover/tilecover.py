"""1-ply covers by tiles of a square or flat-top regular-hexagon tiling.

A lattice offset is searched so that every input point is at least
``delta`` away from the tiling's cell boundaries; the occupied cells are then
emitted.  In strict mode (default) each tile is shrunk by ``delta / 2`` so the
emitted closed tiles are pairwise separated and still contain their points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geom import ConvexPolygon, point_set

GOLDEN = (1 + math.sqrt(5)) / 2
MAX_OFFSET_TRIES = 1000
DELTA_REL = 1e-6
SQRT3 = math.sqrt(3.0)


class OffsetSearchError(RuntimeError):
    """No lattice offset kept every point clear of cell boundaries."""


@dataclass(frozen=True)
class Tile:
    kind: str  # "square" or "hex"
    size: float  # square side or hexagon circumradius

    def __post_init__(self):
        if self.kind not in ("square", "hex"):
            raise ValueError(f"unknown tile kind {self.kind!r}")
        if not self.size > 0:
            raise ValueError("tile size must be positive")

    @property
    def delta(self) -> float:
        return DELTA_REL * self.size

    @property
    def period(self) -> tuple:
        """Extent of a fundamental domain of the lattice, used for offsets."""
        if self.kind == "square":
            return (self.size, self.size)
        return (3.0 * self.size, SQRT3 * self.size)

    def polygon(self, shrink: float = 0.0) -> ConvexPolygon:
        """Tile centred on the origin, boundary pulled in by ``shrink``."""
        if self.kind == "square":
            h = self.size / 2 - shrink
            return ConvexPolygon([(-h, -h), (h, -h), (h, h), (-h, h)])
        rho = self.size - 2 * shrink / SQRT3
        return ConvexPolygon([(rho * math.cos(k * math.pi / 3), rho * math.sin(k * math.pi / 3)) for k in range(6)])


@dataclass
class TileCover:
    tile: Tile
    offset: tuple
    cells: list  # occupied lattice indices (i, j) or axial (q, r)
    centers: list  # tile centres, one per cell
    shrink: float  # boundary pull-in applied to emitted tiles (0 if not strict)
    margins: np.ndarray | None = None  # per-point distance to its cell boundary

    def __len__(self) -> int:
        return len(self.cells)

    def polygons(self):
        poly = self.tile.polygon(self.shrink)
        return [poly.translated(c) for c in self.centers]

    def box_lowers(self) -> list:
        """Lower corners of the emitted squares (square tiles only)."""
        if self.tile.kind != "square":
            raise ValueError("box view only exists for square tiles")
        h = self.tile.size / 2 - self.shrink
        return [(cx - h, cy - h) for cx, cy in self.centers]

    @property
    def emitted_size(self) -> float:
        if self.tile.kind == "square":
            return self.tile.size - 2 * self.shrink
        return self.tile.size - 2 * self.shrink / SQRT3


def offset_sequence(k: int, period: tuple) -> tuple:
    # k = 0 is the zero offset; later offsets follow an irrational rotation
    return ((k / GOLDEN) % 1.0 * period[0], (k / GOLDEN**2) % 1.0 * period[1])


def _square_cells(pts: np.ndarray, side: float, offset: tuple):
    rel = (pts - np.asarray(offset)) / side
    idx = np.floor(rel)
    frac = rel - idx
    margin = side * np.minimum(frac, 1.0 - frac).min(axis=1)
    centers = (idx + 0.5) * side + np.asarray(offset)
    return idx.astype(int), centers, margin


def _hex_round(q: np.ndarray, r: np.ndarray):
    x, z = q, r
    y = -x - z
    rx, ry, rz = np.round(x), np.round(y), np.round(z)
    dx, dy, dz = np.abs(rx - x), np.abs(ry - y), np.abs(rz - z)
    fix_x = (dx > dy) & (dx > dz)
    fix_y = ~fix_x & (dy > dz)
    rx = np.where(fix_x, -ry - rz, rx)
    ry = np.where(fix_y, -rx - rz, ry)
    rz = np.where(~fix_x & ~fix_y, -rx - ry, rz)
    return rx.astype(int), rz.astype(int)


def hex_center(q, r, rho: float, offset=(0.0, 0.0)):
    return (
        rho * 1.5 * np.asarray(q) + offset[0],
        rho * SQRT3 * (np.asarray(r) + np.asarray(q) / 2) + offset[1],
    )


def _hex_cells(pts: np.ndarray, rho: float, offset: tuple):
    rel = pts - np.asarray(offset)
    qf = (2.0 / 3.0) * rel[:, 0] / rho
    rf = (-rel[:, 0] / 3.0 + SQRT3 / 3.0 * rel[:, 1]) / rho
    q, r = _hex_round(qf, rf)
    cx, cy = hex_center(q, r, rho, offset)
    d = pts - np.stack([cx, cy], axis=1)
    apothem = rho * SQRT3 / 2
    normals = np.array([(math.cos(a), math.sin(a)) for a in (np.arange(6) * math.pi / 3 + math.pi / 6)])
    margin = apothem - (d @ normals.T).max(axis=1)
    return np.stack([q, r], axis=1), np.stack([cx, cy], axis=1), margin


def tiling_cover(P, tile: Tile, strict: bool = True, max_tries: int = MAX_OFFSET_TRIES) -> TileCover:
    """Cover ``P`` by occupied cells of a shifted tiling.

    Raises:
        OffsetSearchError: if none of the ``max_tries`` offsets keeps all
            points more than ``tile.delta`` from the cell boundaries.
    """
    pts = point_set(P, 2)
    cells_of = _square_cells if tile.kind == "square" else _hex_cells
    shrink = tile.delta / 2 if strict else 0.0
    if pts.shape[0] == 0:
        return TileCover(tile, (0.0, 0.0), [], [], shrink, np.zeros(0))
    for k in range(max_tries):
        offset = offset_sequence(k, tile.period)
        idx, centers, margin = cells_of(pts, tile.size, offset)
        if margin.min() > tile.delta:
            break
    else:
        raise OffsetSearchError(
            f"no offset in {max_tries} tries keeps points {tile.delta:g} clear of tile boundaries"
        )
    seen = {}
    for key, c in zip(map(tuple, idx.tolist()), centers.tolist()):
        seen.setdefault(key, tuple(c))
    cells = sorted(seen)
    return TileCover(tile, offset, cells, [seen[c] for c in cells], shrink, margin)
