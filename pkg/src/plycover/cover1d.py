"""Greedy left-to-right interval cover with pairwise disjoint intervals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class IntervalCover:
    """Closed intervals ``[l, l + length]`` for each ``l`` in ``lefts``."""

    length: float
    lefts: tuple

    def __len__(self) -> int:
        return len(self.lefts)

    def intervals(self):
        return [(l, l + self.length) for l in self.lefts]

    def assign(self, coords) -> np.ndarray:
        """Index of the interval containing each coordinate (-1 when uncovered)."""
        coords = np.asarray(coords, dtype=float)
        lefts = np.asarray(self.lefts, dtype=float)
        if len(lefts) == 0:
            return np.full(coords.shape, -1, dtype=int)
        idx = np.searchsorted(lefts, coords, side="right") - 1
        ok = (idx >= 0) & (coords <= lefts[np.clip(idx, 0, None)] + self.length)
        return np.where(ok, idx, -1)


def separate(coords: Iterable[float], length: float = 1.0) -> IntervalCover:
    """Minimum-size cover of ``coords`` by pairwise disjoint closed intervals.

    Sweeps the sorted distinct coordinates and opens a new interval whose
    left endpoint is the first uncovered coordinate.  Consecutive intervals
    are separated by a strictly positive gap because the next left endpoint
    is strictly greater than the previous right endpoint.

    Args:
        coords: finite real coordinates (duplicates allowed).
        length: interval length, must be positive.

    Returns:
        IntervalCover with sorted left endpoints, each an input coordinate.
    """
    length = float(length)
    if not (length > 0 and math.isfinite(length)):
        raise ValueError(f"interval length must be positive and finite, got {length}")
    xs = np.unique(np.asarray(list(coords) if not isinstance(coords, np.ndarray) else coords, dtype=float))
    if xs.size and not np.all(np.isfinite(xs)):
        raise ValueError("non-finite coordinate")
    lefts = []
    right = -math.inf
    i, n = 0, xs.size
    while i < n:
        left = float(xs[i])
        lefts.append(left)
        right = left + length
        # skip everything inside [left, right]
        i = int(np.searchsorted(xs, right, side="right"))
    return IntervalCover(length, tuple(lefts))
