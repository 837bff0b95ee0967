"""Benchmark campaigns: cover size, oracle and lower bounds, ply and timings as CSV."""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from .generate import gen_points
from .geom import ConvexPolygon
from .oracle import N_MAX, N_MAX_FAR, far_independent_set_lb, opt_1ply_box_cover_size
from .runner import parse_shape, run_cover_raw, shape_lengths
from .verify import exact_ply, membership

DEFAULTS = {
    "generators": ["uniform"],
    "ns": [],
    "dim": 2,
    "algorithms": ["square"],
    "seeds": [0],
    "params": {},
    "oracle": False,
    "verify": True,
    "verify_max_n": 20000,
    "repeats": 5,
    "warmup": 1,
    "polygon": None,
}


@dataclass
class BenchRecord:
    generator: str
    n: int
    d: int
    algorithm: str
    seed: int
    size: int
    oracle: int | None
    lb: int | None
    ply: int | None
    membership: int | None
    time_s: float
    doubling_ratio: float | None = None


FIELDS = [f.name for f in fields(BenchRecord)]


def time_call(fn, repeats: int = 5, warmup: int = 1) -> float:
    """Median wall-clock seconds of ``repeats`` calls after ``warmup`` calls."""
    for _ in range(warmup):
        fn()
    samples = []
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def _lower_bound(pts: np.ndarray, shape: dict) -> int | None:
    if pts.shape[0] > N_MAX_FAR:
        return None
    kind = shape["kind"]
    if kind in ("square", "rect", "hyperbox"):
        return far_independent_set_lb(pts / np.asarray(shape_lengths(shape)), "Linf", 1.0)
    if kind == "tile-square":
        return far_independent_set_lb(pts, "Linf", float(shape["side"]))
    if kind == "disk":
        return far_independent_set_lb(pts, "L2", 2 * float(shape.get("radius", 0.5)))
    if kind == "tile-hex":
        return far_independent_set_lb(pts, "L2", 2 * float(shape["rho"]))
    v = np.asarray(shape["vertices"])
    diam = float(np.sqrt(((v[:, None] - v[None]) ** 2).sum(-1)).max())
    return far_independent_set_lb(pts, "L2", diam)


def _run_one(task: tuple) -> BenchRecord:
    generator, n, seed, algo, cfg = task
    pts = gen_points(generator, n, cfg["dim"], seed, **cfg["params"])
    poly = ConvexPolygon(cfg["polygon"]) if cfg.get("polygon") else None
    shape = parse_shape(algo, poly)
    result = run_cover_raw(pts, shape)
    elapsed = time_call(lambda: run_cover_raw(pts, shape), cfg["repeats"], cfg["warmup"])
    oracle = None
    if cfg["oracle"] and shape["kind"] in ("square", "rect", "hyperbox"):
        d = len(shape_lengths(shape))
        if d in N_MAX and len(np.unique(pts, axis=0)) <= N_MAX[d]:
            oracle = opt_1ply_box_cover_size(pts, shape_lengths(shape))
    lb = _lower_bound(np.unique(pts, axis=0), shape) if cfg["oracle"] else None
    ply = memb = None
    if cfg["verify"] and n <= cfg["verify_max_n"]:
        ply = exact_ply(result).ply
        memb = membership(pts, result)[0]
    size = len(result)
    if (oracle is not None and size < oracle) or (lb is not None and size < lb) or (
        oracle is not None and lb is not None and oracle < lb
    ):
        raise AssertionError(f"inconsistent bounds: size={size} oracle={oracle} lb={lb}")
    return BenchRecord(generator, n, cfg["dim"], algo, seed, size, oracle, lb, ply, memb, elapsed)


def bench(config: dict, jobs: int = 1) -> list:
    """Run a campaign and return its records, with doubling ratios filled in."""
    cfg = {**DEFAULTS, **config}
    tasks = [
        (g, int(n), int(s), a, cfg)
        for g in cfg["generators"]
        for a in cfg["algorithms"]
        for s in cfg["seeds"]
        for n in cfg["ns"]
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_one, tasks))
    else:
        records = [_run_one(t) for t in tasks]
    by_key = {(r.generator, r.algorithm, r.seed, r.d, r.n): r for r in records}
    for r in records:
        prev = by_key.get((r.generator, r.algorithm, r.seed, r.d, r.n // 2)) if r.n % 2 == 0 else None
        if prev is not None and prev.time_s > 0:
            r.doubling_ratio = r.time_s / prev.time_s
    return records


def to_csv(records: list) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        row = asdict(r)
        for k, v in row.items():
            if v is None:
                row[k] = ""
            elif isinstance(v, float):
                row[k] = repr(v) if math.isfinite(v) else ""
        writer.writerow(row)
    return buf.getvalue()
