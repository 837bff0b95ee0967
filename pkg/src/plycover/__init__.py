"""Minimum-ply geometric covers: intervals, boxes, tilings, disks and convex polygons."""

__version__ = "0.1.0"

from .boxcover import BoxCover, hyperbox_cover, rect_cover, square_cover
from .cover1d import IntervalCover, separate
from .diskcover import DiskCover, disk_cover
from .geom import ConvexPolygon, Disk, HyperBox, Interval, PlacedPolygon, regular_polygon, square_polygon
from .oracle import (
    far_independent_set_lb,
    opt_1ply_box_cover,
    opt_1ply_box_cover_size,
    opt_interval_cover_size,
)
from .polycover import ApproximatingPair, PolygonCover, approximating_pair, polygon_cover
from .tilecover import Tile, TileCover, tiling_cover
from .verify import PlyReport, check_coverage, exact_ply, membership

__all__ = [
    "ApproximatingPair",
    "BoxCover",
    "ConvexPolygon",
    "Disk",
    "DiskCover",
    "HyperBox",
    "Interval",
    "IntervalCover",
    "PlacedPolygon",
    "PlyReport",
    "PolygonCover",
    "Tile",
    "TileCover",
    "approximating_pair",
    "check_coverage",
    "disk_cover",
    "exact_ply",
    "far_independent_set_lb",
    "hyperbox_cover",
    "membership",
    "opt_1ply_box_cover",
    "opt_1ply_box_cover_size",
    "opt_interval_cover_size",
    "polygon_cover",
    "rect_cover",
    "regular_polygon",
    "separate",
    "square_cover",
    "square_polygon",
    "tiling_cover",
]
