from fractions import Fraction

import numpy as np
import pytest

from plycover.boxcover import hyperbox_cover
from plycover.cover1d import separate
from plycover.geom import TAU_GEOM, HyperBox, boxes_disjoint, point_in_box
from plycover.oracle import (
    OracleRefused,
    _Instance,
    far_independent_set_lb,
    feasible_disjoint_placement,
    greedy_far_set_lb,
    opt_1ply_box_cover,
    opt_1ply_box_cover_size,
    opt_interval_cover_size,
    shortest_potentials,
)


def check_witness(P, lengths, res):
    boxes = [HyperBox(tuple(l), tuple(lengths)) for l in res.lowers]
    assert len(boxes) == res.size
    assert all(boxes_disjoint(a, b) for i, a in enumerate(boxes) for b in boxes[i + 1 :])
    for p in np.asarray(P, dtype=float):
        assert any(point_in_box(p, b) for b in boxes)


@pytest.mark.parametrize(
    "P, expected",
    [
        ([(0, 0), (0.5, 0.5)], 1),
        ([(0, 0), (1.8, 0)], 2),
        ([(0, 0), (0.9, 0.9), (1.8, 0)], 2),
    ],
)
def test_box_examples(P, expected):
    res = opt_1ply_box_cover(P, (1, 1))
    assert res.size == expected
    check_witness(P, (1, 1), res)


def test_interval_examples():
    assert opt_interval_cover_size([], 1) == 0
    assert opt_interval_cover_size([0, 0.5, 1.2], 1) == 2
    assert opt_interval_cover_size([0, 1.0], 1) == 1


def test_far_examples():
    assert far_independent_set_lb([(0, 0), (1.8, 0)], "Linf", 1) == 2
    assert far_independent_set_lb([(0, 0), (0.5, 0)], "Linf", 1) == 1
    pts = [(2.0 * i, 0.0) for i in range(5)]
    assert far_independent_set_lb(pts, "L2", 1) == 5


def test_strictness_just_over_touching():
    P = [(0, 0), (1.0 + 2 * TAU_GEOM, 0)]
    res = opt_1ply_box_cover(P, (1, 1))
    assert res.size == 2
    check_witness(P, (1, 1), res)
    a, b = sorted(res.lowers)
    assert b[0] - a[0] > 1 or abs(b[1] - a[1]) > 1


def test_strictness_touching_chain_one_dimensional():
    # singletons {0}, {0.5}, {1.0} in unit boxes would need gaps summing to exactly
    # the available slack: feasible with touching allowed, infeasible when strict
    inst = _Instance(np.array([[0.0], [0.5], [1.0]]), (1,))
    assert feasible_disjoint_placement(inst, [[0], [1], [2]]) is None
    assert feasible_disjoint_placement(inst, [[0, 1], [2]]) is not None
    assert opt_1ply_box_cover_size([(0,), (0.5,), (1.0,)], (1,)) == 1
    assert opt_1ply_box_cover_size([(0,), (1.0,), (2.0,)], (1,)) == 2


def test_strict_zero_cycle_is_infeasible():
    # x1 - x0 >= 1 (strictly) and x0 - x1 >= -1: a zero-weight cycle with a strict edge
    edges = [(0, 1, Fraction(-1), True), (1, 0, Fraction(1), False)]
    assert shortest_potentials(2, edges) is None
    edges = [(0, 1, Fraction(-1), False), (1, 0, Fraction(1), False)]
    assert shortest_potentials(2, edges) is not None


def test_forced_touching_is_not_disjoint():
    # unit squares anchored at x=0 and x=1 meet along a face: not a 1-ply pair
    P = [(0, 0), (1.0, 0), (0.5, 5.0)]
    res = opt_1ply_box_cover(P, (1, 1))
    check_witness(P, (1, 1), res)
    assert res.size == 2


def test_d1_agreement():
    rng = np.random.default_rng(0)
    for _ in range(60):
        coords = rng.choice(np.arange(0, 6, 0.5), size=int(rng.integers(1, 9)))
        P = [(c,) for c in coords]
        L = float(rng.choice([0.5, 1.0, 1.5]))
        assert opt_1ply_box_cover_size(P, (L,)) == opt_interval_cover_size(coords, L) == len(separate(coords, L))


def test_monotone_under_subsets():
    rng = np.random.default_rng(1)
    for _ in range(15):
        P = rng.uniform(0, 3, size=(6, 2))
        sizes = [opt_1ply_box_cover_size(P[:k], (1, 1)) for k in range(1, 7)]
        assert sizes == sorted(sizes)


@pytest.mark.parametrize("d", [2, 3])
def test_oracle_bounds_heuristic_and_lb(d):
    rng = np.random.default_rng(10 + d)
    n_max = 6 if d == 2 else 5
    for _ in range(20):
        P = rng.uniform(0, 2.5, size=(int(rng.integers(1, n_max + 1)), d))
        res = opt_1ply_box_cover(P, (1,) * d)
        check_witness(P, (1,) * d, res)
        assert far_independent_set_lb(P, "Linf", 1) <= res.size <= len(hyperbox_cover(P, (1,) * d))


def test_refusals():
    with pytest.raises(OracleRefused):
        opt_1ply_box_cover_size(np.zeros((8, 2)) + np.arange(8)[:, None], (1, 1))
    with pytest.raises(OracleRefused):
        opt_1ply_box_cover_size([(0, 0, 0, 0)], (1, 1, 1, 1))
    with pytest.raises(OracleRefused):
        opt_interval_cover_size(list(range(13)), 1)
    with pytest.raises(OracleRefused):
        far_independent_set_lb([(i, 0) for i in range(21)])


def test_greedy_lb_is_independent_set():
    rng = np.random.default_rng(2)
    P = rng.uniform(0, 10, size=(200, 2))
    g = greedy_far_set_lb(P, "L2", 1.0)
    assert 1 <= g <= 200
    small = P[:15]
    assert greedy_far_set_lb(small, "L2", 1.0) <= far_independent_set_lb(small, "L2", 1.0)
