"""Deterministic instance generators."""

from __future__ import annotations

import math
import os

import numpy as np
from scipy.spatial import ConvexHull

from .geom import ConvexPolygon
from .io import Instance

KINDS = ("uniform", "clustered", "grid", "boundary-adversarial")
DYADIC = 2**20


def default_seed() -> int:
    """Seed used when none is given; ``PLYCOVER_SEED`` overrides 0."""
    return int(os.environ.get("PLYCOVER_SEED", "0"))


def gen_points(kind: str, n: int, dim: int = 2, seed: int | None = None, **params) -> np.ndarray:
    """Generate an ``(n, dim)`` point array.

    Params by kind:
        uniform: ``lo`` (0), ``hi`` (10).
        clustered: ``clusters`` (3), ``sigma`` (0.5), ``lo``/``hi`` for centres.
        grid: ``spacing`` (0.9); points fill a lattice of ceil(n**(1/dim)) per side.
        boundary-adversarial: ``eps`` (1e-3); lattice whose consecutive
            coordinate gaps are drawn from {1-eps, 1, 1+eps}.  ``eps`` is
            snapped to a multiple of 2**-20 so every gap and coordinate is
            exact in binary and unit gaps are exactly 1.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown generator kind {kind!r}; choose from {', '.join(KINDS)}")
    if n < 0 or dim < 1:
        raise ValueError("need n >= 0 and dim >= 1")
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    if n == 0:
        return np.zeros((0, dim))
    if kind == "uniform":
        lo, hi = float(params.get("lo", 0.0)), float(params.get("hi", 10.0))
        return rng.uniform(lo, hi, size=(n, dim))
    if kind == "clustered":
        k = int(params.get("clusters", 3))
        sigma = float(params.get("sigma", 0.5))
        lo, hi = float(params.get("lo", 0.0)), float(params.get("hi", 10.0))
        centres = rng.uniform(lo, hi, size=(k, dim))
        return centres[rng.integers(0, k, size=n)] + rng.normal(0.0, sigma, size=(n, dim))
    if kind == "grid":
        spacing = float(params.get("spacing", 0.9))
        side = math.ceil(round(n ** (1.0 / dim), 9))
        axes = [np.arange(side) * spacing] * dim
        lattice = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
        return lattice[:n]
    eps = round(float(params.get("eps", 1e-3)) * DYADIC) / DYADIC
    if not 0 <= eps < 1:
        raise ValueError("eps must lie in [0, 1)")
    side = max(2, math.ceil(n ** (1.0 / dim)) + 1)
    gaps = np.array([1.0 - eps, 1.0, 1.0 + eps])
    axes = [np.concatenate([[0.0], np.cumsum(rng.choice(gaps, size=side - 1))]) for _ in range(dim)]
    lattice = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
    pick = rng.choice(len(lattice), size=min(n, len(lattice)), replace=False)
    return lattice[np.sort(pick)]


def gen_instance(kind: str, n: int, dim: int = 2, seed: int | None = None, **params) -> Instance:
    seed = default_seed() if seed is None else seed
    pts = gen_points(kind, n, dim, seed, **params)
    meta = {"name": f"{kind}-n{n}-d{dim}-s{seed}", "seed": seed, "generator": kind, "params": params}
    return Instance(dim, pts.tolist(), meta)


def random_convex_polygon(m: int, seed: int | None = None, aspect: float = 1.0):
    """Convex polygon with at most ``m`` vertices (hull of points on an ellipse)."""
    rng = np.random.default_rng(seed)
    while True:
        ang = np.sort(rng.uniform(0, 2 * np.pi, size=m))
        radius = rng.uniform(0.6, 1.0, size=m)
        pts = np.stack([aspect * radius * np.cos(ang), radius * np.sin(ang)], axis=1)
        try:
            return ConvexPolygon(pts[ConvexHull(pts).vertices])
        except (ValueError, RuntimeError):
            continue
