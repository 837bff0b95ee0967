"""2-ply cover by unit-diameter disks on a grid of 1/sqrt(2) cells.

x and y are each separated globally with intervals of length 1/sqrt(2), so
occupied cells sit on one common grid.  Every occupied cell gets its
circumscribed disk, which has radius exactly 1/2.  Diagonal neighbours are
more than 1 apart and never meet, which caps the ply at 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cover1d import IntervalCover, separate
from .geom import UNIT_DISK_RADIUS, Disk, point_set

CELL = 1.0 / math.sqrt(2.0)


@dataclass
class DiskCover:
    disks: list
    x_cover: IntervalCover
    y_cover: IntervalCover
    cells: list  # (row, column) per disk; row indexes y strips, column x strips

    def __len__(self) -> int:
        return len(self.disks)

    def centers(self) -> np.ndarray:
        return np.array([d.center for d in self.disks]).reshape(-1, 2)


def disk_cover(P) -> DiskCover:
    pts = point_set(P, 2)
    xc = separate(pts[:, 0], CELL)
    yc = separate(pts[:, 1], CELL)
    if pts.shape[0] == 0:
        return DiskCover([], xc, yc, [])
    col = xc.assign(pts[:, 0])
    row = yc.assign(pts[:, 1])
    cells = sorted(set(zip(row.tolist(), col.tolist())))
    disks = [
        Disk((xc.lefts[c] + CELL / 2, yc.lefts[r] + CELL / 2), UNIT_DISK_RADIUS)
        for r, c in cells
    ]
    return DiskCover(disks, xc, yc, cells)
