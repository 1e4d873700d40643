"""Parametric indoor scene model and scene-file I/O.

A scene is a floor plan made of walls (2-D segments extruded to a height),
wall-mounted elements (doors, openings, windows described by an offset along
their wall), and free-standing objects (upright oriented boxes).  Everything
is metric, z is up, and the floor is z = 0.

Scene files are plain JSON; see :func:`load_scene` for the accepted shape.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

from . import geometry
from .geometry import Ray, make_ray, vec3

MACRO_CATEGORIES = frozenset(
    {
        "bathtub",
        "bed",
        "chair",
        "door",
        "opening",
        "sink",
        "sofa",
        "stairs",
        "storage",
        "table",
        "television",
        "toilet",
        "wall",
        "window",
    }
)

MICRO_CATEGORIES = frozenset(
    {
        "door_handle",
        "electric_socket",
        "grab_bar",
        "knife",
        "light_switch",
        "medication",
        "rug",
        "scissors",
        "smoke_alarm",
    }
)

CATEGORIES = MACRO_CATEGORIES | MICRO_CATEGORIES

ELEMENT_KINDS = ("door", "opening", "window")

#: Hits farther than this along a ray are discarded.
MAX_RAY_RANGE = 50.0


class Provenance(str, Enum):
    """Where an object in the scene came from."""

    RECONSTRUCTION = "reconstruction"
    FUSED_DETECTION = "fused_detection"
    GROUND_TRUTH = "ground_truth"


class SceneError(ValueError):
    """Base class for scene-file problems."""


class SceneParseError(SceneError):
    """The file is not valid JSON / not an object at the top level."""


class SceneSchemaError(SceneError):
    """A field is missing, has the wrong type, or an unknown value."""


class SceneGeometryError(SceneError):
    """The fields parse but describe impossible geometry."""


@dataclass
class Wall:
    """A vertical wall: a 2-D segment extruded from the floor to ``height``."""

    id: str
    start: np.ndarray  # (2,) x, y
    end: np.ndarray  # (2,)
    height: float

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.end - self.start))

    def point_along(self, distance: float, z: float = 0.0) -> np.ndarray:
        """World point ``distance`` meters from ``start`` along the wall."""
        u = (self.end - self.start) / self.length
        xy = self.start + distance * u
        return vec3(xy[0], xy[1], z)


@dataclass
class WallElement:
    """A door, opening, or window cut into a wall.

    ``offset`` is the distance from the wall's start to the element's left
    edge; ``width`` is the clear width; ``sill`` is the bottom height above
    the floor (0 for doors and openings); ``height`` is the element's own
    vertical extent.
    """

    id: str
    kind: str
    wall_id: str
    offset: float
    width: float
    sill: float
    height: float


@dataclass
class SceneObject:
    """An upright oriented box.

    ``center`` is the box center in world coordinates, ``half_extents`` the
    half sizes along the box's own x/y/z axes, and ``yaw`` the rotation about
    the world z axis.  ``confidence`` is present exactly when the object was
    produced by detection fusion.
    """

    id: str
    category: str
    center: np.ndarray  # (3,)
    half_extents: np.ndarray  # (3,)
    yaw: float = 0.0
    provenance: Provenance = Provenance.RECONSTRUCTION
    confidence: float | None = None

    @property
    def top_height(self) -> float:
        """Height of the top face above the floor."""
        return float(self.center[2] + self.half_extents[2])

    @property
    def bottom_height(self) -> float:
        """Height of the bottom face above the floor."""
        return float(self.center[2] - self.half_extents[2])

    @property
    def center_height(self) -> float:
        return float(self.center[2])


@dataclass(frozen=True)
class RayHit:
    """Result of a ray query: the nearest surface the ray enters."""

    point: np.ndarray
    entity_kind: str  # 'floor' | 'wall' | 'object'
    entity_id: str  # 'floor' for the floor plane, else a wall/object id
    range: float


@dataclass
class ParametricScene:
    """A complete parametric scene."""

    id: str
    meta: dict[str, Any] = field(default_factory=dict)
    walls: list[Wall] = field(default_factory=list)
    elements: list[WallElement] = field(default_factory=list)
    objects: list[SceneObject] = field(default_factory=list)

    def wall_by_id(self, wall_id: str) -> Wall:
        for w in self.walls:
            if w.id == wall_id:
                return w
        raise KeyError(wall_id)

    def objects_of(self, category: str) -> list[SceneObject]:
        return [o for o in self.objects if o.category == category]

    def elements_of(self, kind: str) -> list[WallElement]:
        return [e for e in self.elements if e.kind == kind]

    def element_center(self, element: WallElement) -> np.ndarray:
        """World-space center of a wall element's rectangle."""
        wall = self.wall_by_id(element.wall_id)
        return wall.point_along(
            element.offset + element.width / 2.0,
            z=element.sill + element.height / 2.0,
        )

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Axis-aligned floor-plan bounding box over walls and objects.

        Returns (min_xy, max_xy).  An empty scene yields a degenerate box at
        the origin.
        """
        points: list[np.ndarray] = []
        for w in self.walls:
            points.append(w.start)
            points.append(w.end)
        for o in self.objects:
            r = float(np.hypot(o.half_extents[0], o.half_extents[1]))
            points.append(o.center[:2] - r)
            points.append(o.center[:2] + r)
        if not points:
            z = np.zeros(2)
            return z, z.copy()
        stacked = np.stack(points)
        return stacked.min(axis=0), stacked.max(axis=0)

    def anchor(self) -> np.ndarray:
        """Scene-level anchor: centroid of the floor-plan bounds at z = 0.

        Used for issues that concern the whole space rather than a single
        object (e.g. a missing fire alarm).
        """
        lo, hi = self.bounds()
        mid = (lo + hi) / 2.0
        return vec3(mid[0], mid[1], 0.0)

    def ray_intersect(self, origin, direction, max_range: float = MAX_RAY_RANGE) -> RayHit | None:
        """Cast a ray and return the nearest hit within ``max_range``.

        Candidates are the floor plane z = 0, every wall rectangle, and every
        object box.  Wall elements do not cut holes: a doorway still reads as
        wall for ray purposes.
        """
        ray = make_ray(origin, direction)
        best_t = max_range
        best: tuple[str, str] | None = None

        t = geometry.ray_plane_z0(ray)
        if t is not None and t < best_t:
            best_t, best = t, ("floor", "floor")

        for w in self.walls:
            base = vec3(w.start[0], w.start[1], 0.0)
            edge_u = vec3(w.end[0] - w.start[0], w.end[1] - w.start[1], 0.0)
            edge_v = vec3(0.0, 0.0, w.height)
            t = geometry.ray_rect(ray, base, edge_u, edge_v)
            if t is not None and t < best_t:
                best_t, best = t, ("wall", w.id)

        for o in self.objects:
            t = geometry.ray_box(ray, o.center, o.half_extents, o.yaw)
            if t is not None and t < best_t:
                best_t, best = t, ("object", o.id)

        if best is None:
            return None
        kind, entity_id = best
        return RayHit(point=ray.at(best_t), entity_kind=kind, entity_id=entity_id, range=best_t)


def object_distance(a: SceneObject, b: SceneObject) -> float:
    """Euclidean distance between two object centers (3-D)."""
    return float(np.linalg.norm(a.center - b.center))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _require(mapping: dict, key: str, path: str) -> Any:
    if not isinstance(mapping, dict):
        raise SceneSchemaError(f"{path}: expected an object, got {type(mapping).__name__}")
    if key not in mapping:
        raise SceneSchemaError(f"{path}.{key}: missing required field")
    return mapping[key]


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SceneSchemaError(f"{path}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise SceneSchemaError(f"{path}: expected a finite number, got {value!r}")
    return float(value)


def _point(value: Any, path: str, dim: int) -> np.ndarray:
    if not isinstance(value, (list, tuple)) or len(value) != dim:
        raise SceneSchemaError(f"{path}: expected a {dim}-element array")
    return np.array([_number(v, f"{path}[{i}]") for i, v in enumerate(value)])


def _parse_wall(raw: dict, path: str) -> Wall:
    wall = Wall(
        id=str(_require(raw, "id", path)),
        start=_point(_require(raw, "start", path), f"{path}.start", 2),
        end=_point(_require(raw, "end", path), f"{path}.end", 2),
        height=_number(_require(raw, "height", path), f"{path}.height"),
    )
    if wall.length < 1e-9:
        raise SceneGeometryError(f"{path}: zero-length wall '{wall.id}'")
    if wall.height <= 0:
        raise SceneGeometryError(f"{path}.height: wall '{wall.id}' must have positive height")
    return wall


def _parse_element(raw: dict, path: str, walls: dict[str, Wall]) -> WallElement:
    kind = str(_require(raw, "kind", path))
    if kind not in ELEMENT_KINDS:
        raise SceneSchemaError(f"{path}.kind: unknown element kind {kind!r}")
    element = WallElement(
        id=str(_require(raw, "id", path)),
        kind=kind,
        wall_id=str(_require(raw, "wall_id", path)),
        offset=_number(_require(raw, "offset", path), f"{path}.offset"),
        width=_number(_require(raw, "width", path), f"{path}.width"),
        sill=_number(_require(raw, "sill", path), f"{path}.sill"),
        height=_number(_require(raw, "height", path), f"{path}.height"),
    )
    if element.wall_id not in walls:
        raise SceneSchemaError(f"{path}.wall_id: unknown wall {element.wall_id!r}")
    if element.width <= 0 or element.height <= 0:
        raise SceneGeometryError(f"{path}: element '{element.id}' must have positive width/height")
    if element.offset < 0:
        raise SceneGeometryError(f"{path}.offset: element '{element.id}' starts before the wall")
    wall = walls[element.wall_id]
    if element.offset + element.width > wall.length + 1e-9:
        raise SceneGeometryError(
            f"{path}: element '{element.id}' exceeds wall '{wall.id}' "
            f"(offset {element.offset} + width {element.width} > length {wall.length:.4g})"
        )
    if element.sill < 0 or element.sill + element.height > wall.height + 1e-9:
        raise SceneGeometryError(
            f"{path}: element '{element.id}' exceeds wall '{wall.id}' vertically"
        )
    return element


def _parse_object(raw: dict, path: str) -> SceneObject:
    category = str(_require(raw, "category", path))
    if category not in CATEGORIES:
        raise SceneSchemaError(f"{path}.category: unknown category {category!r}")
    prov_raw = str(_require(raw, "provenance", path))
    try:
        provenance = Provenance(prov_raw)
    except ValueError:
        raise SceneSchemaError(f"{path}.provenance: unknown provenance {prov_raw!r}") from None
    confidence = raw.get("confidence")
    if provenance is Provenance.FUSED_DETECTION:
        conf = _number(_require(raw, "confidence", path), f"{path}.confidence")
        if not 0.0 <= conf <= 1.0:
            raise SceneSchemaError(f"{path}.confidence: must be in [0, 1], got {conf}")
        confidence = conf
    elif confidence is not None:
        raise SceneSchemaError(
            f"{path}.confidence: only fused_detection objects carry a confidence"
        )
    obj = SceneObject(
        id=str(_require(raw, "id", path)),
        category=category,
        center=_point(_require(raw, "center", path), f"{path}.center", 3),
        half_extents=_point(_require(raw, "half_extents", path), f"{path}.half_extents", 3),
        yaw=_number(_require(raw, "yaw", path), f"{path}.yaw"),
        provenance=provenance,
        confidence=confidence,
    )
    if np.any(obj.half_extents <= 0):
        raise SceneGeometryError(f"{path}.half_extents: object '{obj.id}' has non-positive extents")
    return obj


def scene_from_dict(doc: dict) -> ParametricScene:
    """Build a scene from an already-parsed JSON document."""
    if not isinstance(doc, dict):
        raise SceneParseError(f"scene document must be an object, got {type(doc).__name__}")
    scene_id = str(_require(doc, "id", "$"))
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise SceneSchemaError("$.meta: expected an object")

    walls = [_parse_wall(w, f"$.walls[{i}]") for i, w in enumerate(doc.get("walls", []))]
    wall_index = {w.id: w for w in walls}
    if len(wall_index) != len(walls):
        raise SceneSchemaError("$.walls: duplicate wall ids")
    elements = [
        _parse_element(e, f"$.elements[{i}]", wall_index)
        for i, e in enumerate(doc.get("elements", []))
    ]
    objects = [_parse_object(o, f"$.objects[{i}]") for i, o in enumerate(doc.get("objects", []))]
    ids = [o.id for o in objects]
    if len(set(ids)) != len(ids):
        raise SceneSchemaError("$.objects: duplicate object ids")
    return ParametricScene(id=scene_id, meta=dict(meta), walls=walls, elements=elements, objects=objects)


def load_scene(source: str | Path | dict) -> ParametricScene:
    """Load a scene from a JSON file, a JSON string, or a parsed dict.

    Raises
    ------
    SceneParseError
        If the input is not JSON.
    SceneSchemaError
        If a field is missing or malformed (the message names the field).
    SceneGeometryError
        If the geometry is impossible (zero-length walls, elements that
        exceed their wall, non-positive box extents).
    """
    if isinstance(source, dict):
        return scene_from_dict(source)
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise SceneParseError(f"cannot read scene file {source}: {exc}") from exc
    else:
        text = source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneParseError(f"invalid JSON: {exc}") from exc
    return scene_from_dict(doc)


def scene_to_dict(scene: ParametricScene) -> dict:
    """Inverse of :func:`scene_from_dict`; floats come back as plain floats."""
    doc: dict[str, Any] = {
        "id": scene.id,
        "meta": scene.meta,
        "walls": [
            {
                "id": w.id,
                "start": [float(w.start[0]), float(w.start[1])],
                "end": [float(w.end[0]), float(w.end[1])],
                "height": float(w.height),
            }
            for w in scene.walls
        ],
        "elements": [
            {
                "id": e.id,
                "kind": e.kind,
                "wall_id": e.wall_id,
                "offset": float(e.offset),
                "width": float(e.width),
                "sill": float(e.sill),
                "height": float(e.height),
            }
            for e in scene.elements
        ],
        "objects": [],
    }
    for o in scene.objects:
        entry: dict[str, Any] = {
            "id": o.id,
            "category": o.category,
            "center": [float(v) for v in o.center],
            "half_extents": [float(v) for v in o.half_extents],
            "yaw": float(o.yaw),
            "provenance": o.provenance.value,
        }
        if o.confidence is not None:
            entry["confidence"] = float(o.confidence)
        doc["objects"].append(entry)
    return doc


def serialize_scene(scene: ParametricScene) -> str:
    """Canonical JSON text for a scene (stable key order, trailing newline)."""
    return json.dumps(scene_to_dict(scene), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_scene(scene: ParametricScene, path: str | Path) -> None:
    Path(path).write_text(serialize_scene(scene), encoding="utf-8")
