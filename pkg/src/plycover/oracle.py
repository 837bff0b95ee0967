"""Exact small-instance optima and lower bounds for certifying cover sizes.

``opt_1ply_box_cover_size`` solves the minimum number of pairwise disjoint
closed boxes of fixed size that cover a point set.  Points are partitioned
into groups (one box per group); every pair of groups must be strictly
separated along some axis.  Once an axis and an order is chosen for every
pair, the box corners obey a system of difference constraints per axis,
checked by Bellman-Ford on exact rationals.  Strict inequalities are kept
symbolic: an edge weight is the pair ``(w, -1)`` for ``< w`` and ``(w, 0)``
for ``<= w``, compared lexicographically, so a zero-weight cycle through a
strict edge is reported as infeasible without any epsilon.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .geom import TAU_GEOM, point_set

N_MAX = {1: 12, 2: 7, 3: 5}
N_MAX_INTERVAL = 12
N_MAX_FAR = 20


class OracleRefused(ValueError):
    """The instance is outside the sizes the exhaustive oracles accept."""


@dataclass
class OracleResult:
    size: int
    groups: list = field(default_factory=list)  # lists of point indices
    lowers: list = field(default_factory=list)  # witness lower corners, one per group
    points: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "groups": [[list(map(float, self.points[i])) for i in g] for g in self.groups],
            "lowers": [list(lo) for lo in self.lowers],
        }


# ---------------------------------------------------------- difference systems

ZERO = (Fraction(0), 0)


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def shortest_potentials(n_nodes: int, edges: list):
    """Bellman-Ford from node 0 over lexicographic ``(weight, strict)`` edges.

    ``edges`` holds ``(u, v, w, strict)`` meaning ``x_v - x_u <= w`` (or
    ``< w`` if strict).  Node 0 must reach every node.

    Returns:
        list of ``(Fraction, int)`` distances, or ``None`` if a negative cycle
        (or a zero cycle containing a strict edge) makes the system infeasible.
    """
    INF = None
    dist = [INF] * n_nodes
    dist[0] = ZERO
    wts = [(u, v, (w, -1 if strict else 0)) for u, v, w, strict in edges]
    for _ in range(n_nodes - 1):
        changed = False
        for u, v, w in wts:
            if dist[u] is None:
                continue
            cand = _add(dist[u], w)
            if dist[v] is None or cand < dist[v]:
                dist[v] = cand
                changed = True
        if not changed:
            return dist
    for u, v, w in wts:
        if dist[u] is not None and (dist[v] is None or _add(dist[u], w) < dist[v]):
            return None
    return dist


def _realize(dist, eps: Fraction) -> list:
    return [d[0] + d[1] * eps for d in dist]


class _Instance:
    """Exact-rational view of a point set with fixed box lengths."""

    def __init__(self, pts: np.ndarray, lengths):
        self.pts = pts
        self.n, self.d = pts.shape
        self.L = [Fraction(float(v)) for v in lengths]
        self.q = [[Fraction(float(c)) for c in row] for row in pts]

    def fits(self, group) -> bool:
        for a in range(self.d):
            vals = [self.q[i][a] for i in group]
            if max(vals) - min(vals) > self.L[a]:
                return False
        return True

    def window_edges(self, groups, axis: int) -> list:
        edges = []
        for g, members in enumerate(groups, start=1):
            vals = [self.q[i][axis] for i in members]
            edges.append((0, g, min(vals), False))  # x_g <= min
            edges.append((g, 0, self.L[axis] - max(vals), False))  # x_g >= max - L
        return edges


def _pair_options(inst: _Instance, groups) -> list | None:
    """Axis/order choices that can separate each pair of groups.

    A box before another along an axis is only possible when every point of
    the first group lies strictly below every point of the second.
    """
    lo = [[min(inst.q[i][a] for i in g) for a in range(inst.d)] for g in groups]
    hi = [[max(inst.q[i][a] for i in g) for a in range(inst.d)] for g in groups]
    pairs = []
    for g, j in itertools.combinations(range(len(groups)), 2):
        opts = []
        for a in range(inst.d):
            if hi[g][a] < lo[j][a]:
                opts.append((a, g, j))
            if hi[j][a] < lo[g][a]:
                opts.append((a, j, g))
        if not opts:
            return None
        pairs.append(opts)
    pairs.sort(key=len)
    return pairs


def _search(inst: _Instance, groups, pairs, k: int, axis_edges: list) -> list | None:
    """Depth-first choice of one separation per pair; returns per-axis edges."""
    n_nodes = len(groups) + 1
    if k == len(pairs):
        return axis_edges
    for a, first, second in pairs[k]:
        # x_second - x_first > L  <=>  x_first - x_second < -L
        edge = (second + 1, first + 1, -inst.L[a], True)
        trial = axis_edges[a] + [edge]
        if shortest_potentials(n_nodes, trial) is None:
            continue
        nxt = list(axis_edges)
        nxt[a] = trial
        found = _search(inst, groups, pairs, k + 1, nxt)
        if found is not None:
            return found
    return None


def feasible_disjoint_placement(inst: _Instance, groups) -> list | None:
    """Lower corners of pairwise disjoint boxes, one covering each group, or None."""
    if not all(inst.fits(g) for g in groups):
        return None
    base = [inst.window_edges(groups, a) for a in range(inst.d)]
    for a in range(inst.d):
        if shortest_potentials(len(groups) + 1, base[a]) is None:
            return None
    if len(groups) == 1:
        chosen = base
    else:
        pairs = _pair_options(inst, groups)
        if pairs is None:
            return None
        chosen = _search(inst, groups, pairs, 0, base)
        if chosen is None:
            return None
    return _witness(inst, groups, chosen)


def _witness(inst: _Instance, groups, axis_edges) -> list:
    n_nodes = len(groups) + 1
    coords = []
    for a in range(inst.d):
        dist = shortest_potentials(n_nodes, axis_edges[a])
        eps = inst.L[a]
        # shrink the symbolic epsilon until every constraint holds numerically
        for _ in range(200):
            x = _realize(dist, eps)
            if all(
                (x[v] - x[u] < w) if strict else (x[v] - x[u] <= w)
                for u, v, w, strict in axis_edges[a]
            ):
                break
            eps /= 2
        else:  # pragma: no cover - lexicographic feasibility guarantees success
            raise AssertionError("could not realize strict separations")
        coords.append([x[g] - x[0] for g in range(1, n_nodes)])
    return [tuple(float(coords[a][g]) for a in range(inst.d)) for g in range(len(groups))]


def _partitions(inst: _Instance, k: int):
    """Partitions of the points into exactly k groups that each fit in one box."""
    n = inst.n
    groups: list = []

    def rec(i):
        if i == n:
            if len(groups) == k:
                yield [list(g) for g in groups]
            return
        if len(groups) + (n - i) < k:
            return
        for g in groups:
            g.append(i)
            if inst.fits(g):
                yield from rec(i + 1)
            g.pop()
        if len(groups) < k:
            groups.append([i])
            yield from rec(i + 1)
            groups.pop()

    yield from rec(0)


def opt_1ply_box_cover(P, lengths, n_max: int | None = None) -> OracleResult:
    """Minimum 1-ply cover by closed boxes of size ``lengths`` with a witness.

    Raises:
        OracleRefused: when ``n`` exceeds ``n_max`` or ``d`` is not 1, 2 or 3.
    """
    lengths = tuple(float(v) for v in lengths)
    d = len(lengths)
    if d not in N_MAX:
        raise OracleRefused(f"dimension {d} unsupported (1, 2 or 3 only)")
    pts = point_set(P, d)
    n_max = N_MAX[d] if n_max is None else n_max
    if pts.shape[0] > n_max:
        raise OracleRefused(f"n = {pts.shape[0]} exceeds n_max = {n_max} for d = {d}")
    if pts.shape[0] == 0:
        return OracleResult(0, [], [], pts)
    inst = _Instance(pts, lengths)
    # The float greedy is only a hint: a coordinate gap within one rounding of
    # the box length can fit in floating point but not exactly, so the search
    # may have to go past it.  The greedy run in exact arithmetic always
    # succeeds, so some k <= n is feasible.
    for k in range(1, pts.shape[0] + 1):
        for groups in _partitions(inst, k):
            lowers = feasible_disjoint_placement(inst, groups)
            if lowers is not None:
                return OracleResult(k, groups, lowers, pts)
    raise AssertionError("exact greedy cover always exists")  # pragma: no cover


def opt_1ply_box_cover_size(P, lengths, n_max: int | None = None) -> int:
    return opt_1ply_box_cover(P, lengths, n_max).size


def opt_interval_cover_size(coords, length: float) -> int:
    """Minimum 1-ply interval cover size by exhaustive search over left endpoints.

    Candidate left endpoints are the coordinates themselves; subsets are tried
    by increasing size.  Independent of the greedy sweep.
    """
    xs = sorted(set(float(c) for c in coords))
    if len(xs) > N_MAX_INTERVAL:
        raise OracleRefused(f"n = {len(xs)} exceeds {N_MAX_INTERVAL}")
    if not xs:
        return 0
    for k in range(1, len(xs) + 1):
        for lefts in itertools.combinations(xs, k):
            if any(lefts[i + 1] <= lefts[i] + length for i in range(k - 1)):
                continue
            if all(any(l <= x <= l + length for l in lefts) for x in xs):
                return k
    raise AssertionError("singletons always cover")  # pragma: no cover


def _slack(metric: str) -> float:
    # closed disks accept points up to TAU_GEOM outside, so two points within
    # threshold + 2*TAU_GEOM can share one; box containment is exact
    return 2 * TAU_GEOM if metric == "L2" else 0.0


def _distance(p, q, metric: str) -> float:
    if metric == "Linf":
        return max(abs(a - b) for a, b in zip(p, q))
    if metric == "L2":
        return math.dist(p, q)
    raise ValueError(f"unknown metric {metric!r}")


def max_independent_set(adj: list) -> int:
    """Size of a maximum independent set; ``adj`` holds neighbour bitmasks."""
    n = len(adj)

    def rec(cand: int) -> int:
        if cand == 0:
            return 0
        v = (cand & -cand).bit_length() - 1
        # if v has no neighbour among candidates it is always taken
        without_v = cand & ~(1 << v)
        take = 1 + rec(without_v & ~adj[v])
        if adj[v] & without_v == 0:
            return take
        return max(take, rec(without_v))

    return rec((1 << n) - 1)


def far_independent_set_lb(P, metric: str = "Linf", threshold: float = 1.0) -> int:
    """Lower bound on any cover size: points farther apart than ``threshold``
    cannot share an object, so a maximum independent set of the "close"
    graph needs one object per vertex.  Under ``L2`` the threshold is widened
    by the disk containment tolerance so the bound stays valid for covers
    that the verifier accepts.
    """
    pts = point_set(P)
    n = pts.shape[0]
    if n > N_MAX_FAR:
        raise OracleRefused(f"n = {n} exceeds {N_MAX_FAR}")
    adj = [0] * n
    limit = threshold + _slack(metric)
    for i, j in itertools.combinations(range(n), 2):
        if _distance(pts[i], pts[j], metric) <= limit:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return max_independent_set(adj)


def greedy_far_set_lb(P, metric: str = "L2", threshold: float = 1.0) -> int:
    """Size of a greedy independent set of the close graph; a valid lower
    bound for instances too large for the exact search."""
    pts = point_set(P)
    limit = threshold + _slack(metric)
    chosen: list = []
    for p in pts:
        if all(_distance(p, q, metric) > limit for q in chosen):
            chosen.append(p)
    return len(chosen)
