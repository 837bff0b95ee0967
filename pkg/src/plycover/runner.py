"""Shape descriptors, cover dispatch and conversion to/from cover documents."""

from __future__ import annotations

from . import __version__
from .boxcover import hyperbox_cover
from .diskcover import disk_cover
from .geom import UNIT_DISK_RADIUS, ConvexPolygon, Disk, HyperBox, PlacedPolygon
from .io import CoverDocument, FormatError, Instance
from .polycover import polygon_cover
from .tilecover import Tile, tiling_cover


def parse_shape(text: str, polygon: ConvexPolygon | None = None) -> dict:
    """Parse a CLI shape string into a shape descriptor.

    Accepted: ``square``, ``rect:a,b``, ``cube``, ``hyperbox:l1,...,ld``,
    ``disk``, ``tile-square:s``, ``tile-hex:rho``, ``polygon``.
    """
    name, _, arg = text.partition(":")
    try:
        nums = [float(v) for v in arg.split(",")] if arg else []
    except ValueError as exc:
        raise FormatError(f"bad numbers in shape {text!r}") from exc
    if name == "square" and not nums:
        return {"kind": "square"}
    if name == "rect" and len(nums) == 2:
        return {"kind": "rect", "a": nums[0], "b": nums[1]}
    if name == "cube" and not nums:
        return {"kind": "hyperbox", "lengths": [1.0, 1.0, 1.0]}
    if name == "hyperbox" and nums:
        return {"kind": "hyperbox", "lengths": nums}
    if name == "disk" and not nums:
        return {"kind": "disk", "radius": UNIT_DISK_RADIUS}
    if name == "tile-square" and len(nums) == 1:
        return {"kind": "tile-square", "side": nums[0]}
    if name == "tile-hex" and len(nums) == 1:
        return {"kind": "tile-hex", "rho": nums[0]}
    if name == "polygon" and not nums:
        if polygon is None:
            raise FormatError("shape 'polygon' needs a polygon file")
        return {"kind": "polygon", "vertices": [list(v) for v in polygon.vertices]}
    raise FormatError(f"unrecognized shape {text!r}")


def shape_lengths(shape: dict) -> tuple:
    kind = shape["kind"]
    if kind == "square":
        return (1.0, 1.0)
    if kind == "rect":
        return (float(shape["a"]), float(shape["b"]))
    if kind == "hyperbox":
        return tuple(float(v) for v in shape["lengths"])
    raise FormatError(f"shape {kind!r} is not a box")


def run_cover_raw(points, shape: dict):
    """Run the covering algorithm for ``shape`` and return its native result."""
    kind = shape["kind"]
    if kind in ("square", "rect", "hyperbox"):
        return hyperbox_cover(points, shape_lengths(shape))
    if kind == "disk":
        return disk_cover(points)
    if kind == "tile-square":
        return tiling_cover(points, Tile("square", float(shape["side"])))
    if kind == "tile-hex":
        return tiling_cover(points, Tile("hex", float(shape["rho"])))
    if kind == "polygon":
        return polygon_cover(points, ConvexPolygon(shape["vertices"]))
    raise FormatError(f"unknown shape kind {kind!r}")


def to_document(result, shape: dict, seed=None) -> CoverDocument:
    kind = shape["kind"]
    shape = dict(shape)
    if kind in ("square", "rect", "hyperbox"):
        placements = [list(p) for p in result.placements]
        algorithm = "hyperbox_cover"
    elif kind == "disk":
        placements = [list(d.center) for d in result.disks]
        algorithm = "disk_cover"
    elif kind == "tile-square":
        placements = [list(p) for p in result.box_lowers()]
        shape.update(emitted_side=result.emitted_size, offset=list(result.offset))
        algorithm = "tiling_cover"
    elif kind == "tile-hex":
        placements = [list(c) for c in result.centers]
        shape.update(emitted_rho=result.emitted_size, offset=list(result.offset))
        algorithm = "tiling_cover"
    else:
        placements = [list(t) for t in result.translations]
        pair = result.pair
        shape.update(pair={"angle": pair.angle, "ratio": pair.ratio})
        algorithm = "polygon_cover"
    provenance = {"algorithm": algorithm, "seed": seed, "version": __version__}
    return CoverDocument(shape, placements, provenance)


def run_cover(instance: Instance, shape: dict) -> CoverDocument:
    """Cover an instance with the algorithm matching ``shape``."""
    result = run_cover_raw(instance.points, shape)
    return to_document(result, shape, instance.meta.get("seed"))


def cover_objects(doc: CoverDocument) -> list:
    """Concrete closed shapes described by a cover document."""
    s = doc.shape
    kind = s["kind"]
    if kind in ("square", "rect", "hyperbox"):
        lengths = shape_lengths(s)
        return [HyperBox(p, lengths) for p in doc.placements]
    if kind == "disk":
        r = float(s.get("radius", UNIT_DISK_RADIUS))
        return [Disk(p, r) for p in doc.placements]
    if kind == "tile-square":
        side = float(s.get("emitted_side", s["side"]))
        return [HyperBox(p, (side, side)) for p in doc.placements]
    if kind == "tile-hex":
        poly = Tile("hex", float(s.get("emitted_rho", s["rho"]))).polygon()
        return [PlacedPolygon(poly, tuple(p)) for p in doc.placements]
    if kind == "polygon":
        poly = ConvexPolygon(s["vertices"])
        return [PlacedPolygon(poly, tuple(p)) for p in doc.placements]
    raise FormatError(f"unknown shape kind {kind!r}")
