"""JSON file formats for instances, covers and polygons."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .geom import ConvexPolygon


class FormatError(ValueError):
    pass


@dataclass
class Instance:
    dim: int
    points: list
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = [[float(c) for c in p] for p in self.points]
        for p in self.points:
            if len(p) != self.dim:
                raise FormatError(f"point {p} does not have dim {self.dim}")
            if not all(math.isfinite(c) for c in p):
                raise FormatError(f"non-finite coordinate in {p}")

    def to_dict(self) -> dict:
        return {"dim": self.dim, "points": self.points, "meta": self.meta}

    @classmethod
    def from_dict(cls, d: dict) -> "Instance":
        try:
            return cls(int(d["dim"]), d["points"], dict(d.get("meta", {})))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed instance: {exc}") from exc


@dataclass
class CoverDocument:
    """Serialized cover: shape descriptor, placements and provenance.

    Placements are lower corners for boxes and square tiles, centres for
    disks and hexagon tiles, and translation vectors for polygons.
    """

    shape: dict
    placements: list
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.placements = [[float(c) for c in p] for p in self.placements]
        arity = placement_arity(self.shape)
        for p in self.placements:
            if len(p) != arity:
                raise FormatError(f"placement {p} has arity {len(p)}, shape needs {arity}")

    def to_dict(self) -> dict:
        return {"shape": self.shape, "placements": self.placements, "provenance": self.provenance}

    @classmethod
    def from_dict(cls, d: dict) -> "CoverDocument":
        try:
            return cls(dict(d["shape"]), d["placements"], dict(d.get("provenance", {})))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed cover: {exc}") from exc


def placement_arity(shape: dict) -> int:
    kind = shape.get("kind")
    if kind in ("square", "rect", "disk", "tile-square", "tile-hex", "polygon"):
        return 2
    if kind == "hyperbox":
        return len(shape["lengths"])
    raise FormatError(f"unknown shape kind {kind!r}")


def dumps(obj) -> str:
    return json.dumps(obj.to_dict(), indent=1, sort_keys=True)


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def _load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_instance(path) -> Instance:
    return Instance.from_dict(_load_json(path))


def load_cover(path) -> CoverDocument:
    return CoverDocument.from_dict(_load_json(path))


def load_polygon(path) -> ConvexPolygon:
    d = _load_json(path)
    if "vertices" not in d:
        raise FormatError(f"{path}: polygon file needs a 'vertices' list")
    return ConvexPolygon(d["vertices"])
