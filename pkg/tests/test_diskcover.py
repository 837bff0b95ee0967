import math

import numpy as np
import pytest

from plycover.diskcover import CELL, disk_cover
from plycover.generate import gen_points
from plycover.geom import disks_intersect
from plycover.verify import check_coverage, exact_ply

H = CELL / 2  # 0.35355339...


def probe_counts(centers: np.ndarray, probes: np.ndarray) -> np.ndarray:
    """Cover disks met by each unit-diameter probe disk (closed, so distance <= 1)."""
    d = np.sqrt(((probes[:, None, :] - centers[None, :, :]) ** 2).sum(-1))
    return (d <= 1.0 + 1e-12).sum(1)


def grid_probes(cover, rng, n):
    """Probes centred on cell corners, centres and edge midpoints of the cover grid."""
    xs = np.array(cover.x_cover.lefts)
    ys = np.array(cover.y_cover.lefts)
    fx = rng.choice(np.concatenate([xs, xs + H, xs + CELL]), n)
    fy = rng.choice(np.concatenate([ys, ys + H, ys + CELL]), n)
    return np.stack([fx, fy], axis=1)


def test_empty():
    assert len(disk_cover([])) == 0


def test_two_close_points_one_disk():
    cover = disk_cover([(0, 0), (0.6, 0.1)])
    assert len(cover) == 1
    np.testing.assert_allclose(cover.disks[0].center, (0.35355339, 0.35355339), atol=1e-8)
    assert cover.disks[0].radius == 0.5


def test_tangent_pair():
    cover = disk_cover([(0, 0), (1.0, 0)])
    np.testing.assert_allclose(cover.centers(), [(H, H), (1 + H, H)], atol=1e-12)
    rep = exact_ply(cover)
    assert rep.ply == 2
    np.testing.assert_allclose(rep.witness, (0.5 + H, H), atol=1e-9)


def test_cell_corners_lie_on_circle():
    cover = disk_cover([(0, 0), (CELL, CELL)])
    assert len(cover) == 1
    assert check_coverage([(0, 0), (CELL, CELL)], cover) == []
    assert math.isclose(math.hypot(H, H), 0.5)


@pytest.mark.parametrize("kind", ["uniform", "clustered", "grid", "boundary-adversarial"])
def test_invariants_random(kind):
    rng = np.random.default_rng(17)
    for seed in range(8):
        P = gen_points(kind, int(rng.integers(1, 150)), 2, seed)
        cover = disk_cover(P)
        assert check_coverage(P, cover) == []
        assert exact_ply(cover).ply <= 2
        for (ra, ca), a in zip(cover.cells, cover.disks):
            for (rb, cb), b in zip(cover.cells, cover.disks):
                if (ra != rb and ca != cb) or (ra == rb and abs(ca - cb) > 1) or (ca == cb and abs(ra - rb) > 1):
                    assert not disks_intersect(a, b)
        c = cover.centers()
        probes = np.concatenate([
            rng.uniform(c.min(0) - 1, c.max(0) + 1, size=(5000, 2)),
            grid_probes(cover, rng, 5000),
        ])
        assert probe_counts(c, probes).max() <= 7


def test_dense_grid_probe_attains_seven_at_most():
    # points on every cell of a 1/sqrt(2) grid make the densest possible cover
    g = np.arange(8) * CELL * 1.0000001
    P = np.array([(x, y) for x in g for y in g])
    cover = disk_cover(P)
    assert len(cover) == 64
    rng = np.random.default_rng(0)
    probes = np.concatenate([rng.uniform(1, 4, size=(10_000, 2)), grid_probes(cover, rng, 10_000)])
    counts = probe_counts(cover.centers(), probes)
    assert counts.max() <= 7


def test_every_disk_cell_is_occupied():
    rng = np.random.default_rng(3)
    P = rng.uniform(0, 6, size=(40, 2))
    cover = disk_cover(P)
    for (r, c) in cover.cells:
        x0, y0 = cover.x_cover.lefts[c], cover.y_cover.lefts[r]
        inside = (P[:, 0] >= x0) & (P[:, 0] <= x0 + CELL) & (P[:, 1] >= y0) & (P[:, 1] <= y0 + CELL)
        assert inside.any()
