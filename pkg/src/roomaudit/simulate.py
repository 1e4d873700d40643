"""Seeded synthetic scenes and detection streams with planted violations.

:func:`generate_scene` builds a parametric home (a row of rooms), plants a
requested number of violations per rubric, fills in compliant clutter, and
derives the ground truth by running the reference evaluator over the result
rather than trusting its own bookkeeping.  :func:`generate_stream` walks a
camera around each room and emits the 2-D detections a small-object detector
would produce, with controllable noise.  Everything is driven by explicit
seeds: the same spec always yields byte-identical scenes and streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .evaluation import GroundTruthIssue
from .fusion import CameraFrame, DetectionEvent
from .geometry import matrix_to_quat, vec3
from .rubrics import Rubric, load_default_rubrics
from .scene import (
    MICRO_CATEGORIES,
    ParametricScene,
    Provenance,
    SceneObject,
    Wall,
    WallElement,
)
from .units import inches_to_meters

WALL_HEIGHT = 2.5
DOOR_WIDTH = 0.92  # compliant clear width (> 32 in)


class SimulationError(ValueError):
    """The requested scene cannot be built (bad spec or no room left)."""


@dataclass(frozen=True)
class SceneSpec:
    """What to synthesize.

    ``planted`` maps rubric ids to violation counts.  The door-handle and
    knob rubrics share the same physical object (their compliance bands are
    identical), so when both are requested their counts must agree and one
    planted handle satisfies one count of each.
    """

    seed: int = 0
    rooms: int = 3
    size_sqm: float = 65.0
    planted: dict[str, int] = field(default_factory=dict)
    clutter: int = 6
    home_type: str = "apartment"
    id: str | None = None


@dataclass(frozen=True)
class NoiseSpec:
    """Detector noise channels; all default to zero (perfect detector)."""

    pixel_sigma: float = 0.0
    miss_rate: float = 0.0
    false_positive_rate: float = 0.0


#: A realistic default noise profile for end-to-end experiments.
DEFAULT_NOISE = NoiseSpec(pixel_sigma=2.0, miss_rate=0.1, false_positive_rate=0.02)


@dataclass(frozen=True)
class TrajectorySpec:
    """Camera walk parameters for :func:`generate_stream`."""

    seed: int = 0
    speed: float = 0.5  # m/s along the path
    frame_rate: float = 10.0  # camera frames per second
    camera_height: float = 1.4
    inset: float = 0.7  # distance kept from the walls
    pitch_amplitude_deg: float = 30.0  # camera sweeps up/down as people scan
    pitch_period_s: float = 4.0
    stare_spacing: float = 0.5  # wall-inspection stops along the loop, in meters
    stare_frames: int = 30  # frames spent panning the wall at each stop
    stare_z: tuple[float, float] = (0.2, 2.2)  # vertical aim sweep at each stop
    max_detect_range: float = 5.0
    central_crop: float = 0.7  # detections only fire in the central crop
    noise: NoiseSpec = NoiseSpec()
    intrinsics: dict = field(
        default_factory=lambda: {"fx": 400.0, "fy": 400.0, "cx": 320.0, "cy": 240.0, "w": 640, "h": 480}
    )


# --------------------------------------------------------------------------
# scene generation
# --------------------------------------------------------------------------

_SHARED_HANDLE_RUBRICS = ("doorhandle.pos_height", "knob.pos_height")


def _footprint(half_extents: np.ndarray, yaw: float) -> tuple[float, float]:
    """Axis-aligned half extents of a box footprint (yaw is 0 or pi/2 here)."""
    hx, hy = float(half_extents[0]), float(half_extents[1])
    return (hy, hx) if abs(math.sin(yaw)) > 0.5 else (hx, hy)


@dataclass
class _Builder:
    """Mutable placement state while a scene is being assembled."""

    rng: np.random.Generator
    rooms: list[tuple[float, float, float, float]]  # (x0, y0, x1, y1)
    walls: list[Wall]
    elements: list[WallElement]
    objects: list[SceneObject]
    spans: dict[str, list[tuple[float, float]]]  # wall id -> used offset spans
    counters: dict[str, int] = field(default_factory=dict)

    def next_id(self, category: str) -> str:
        n = self.counters.get(category, 0) + 1
        self.counters[category] = n
        return f"{category}_{n:02d}"

    def room(self) -> tuple[float, float, float, float]:
        return self.rooms[int(self.rng.integers(len(self.rooms)))]

    def _collides(
        self,
        x: float,
        y: float,
        z: float,
        half_extents: np.ndarray,
        yaw: float,
        category: str,
    ) -> bool:
        hx, hy = _footprint(half_extents, yaw)
        hz = float(half_extents[2])
        for obj in self.objects:
            ox, oy, oz = (float(v) for v in obj.center)
            # same-category micro objects keep well apart so their detection
            # clusters never bleed into each other (join radius 0.3 m)
            if obj.category == category and category in MICRO_CATEGORIES:
                if math.dist((x, y, z), (ox, oy, oz)) < 1.2:
                    return True
                continue
            ohx, ohy = _footprint(obj.half_extents, obj.yaw)
            ohz = float(obj.half_extents[2])
            if abs(z - oz) > hz + ohz + 0.1:
                continue  # vertically clear (e.g. a wall cabinet above a rug)
            if abs(x - ox) < hx + ohx + 0.15 and abs(y - oy) < hy + ohy + 0.15:
                return True
        return False

    def _clear_of(self, x: float, y: float, z: float, avoid: list[tuple[SceneObject, float]]) -> bool:
        for other, min_dist in avoid:
            d = math.dist((x, y, z), tuple(float(v) for v in other.center))
            if d < min_dist:
                return False
        return True

    def place_floor(
        self,
        category: str,
        half_extents: np.ndarray,
        z_center: float,
        avoid: list[tuple[SceneObject, float]] | None = None,
        margin: float = 0.3,
    ) -> SceneObject:
        """Place a free-standing box somewhere on the floor of a random room."""
        hx, hy = float(half_extents[0]), float(half_extents[1])
        for _ in range(400):
            x0, y0, x1, y1 = self.room()
            lo_x, hi_x = x0 + hx + margin, x1 - hx - margin
            lo_y, hi_y = y0 + hy + margin, y1 - hy - margin
            if lo_x >= hi_x or lo_y >= hi_y:
                continue
            x = float(self.rng.uniform(lo_x, hi_x))
            y = float(self.rng.uniform(lo_y, hi_y))
            if self._collides(x, y, z_center, half_extents, 0.0, category):
                continue
            if avoid and not self._clear_of(x, y, z_center, avoid):
                continue
            obj = SceneObject(
                id=self.next_id(category),
                category=category,
                center=vec3(x, y, z_center),
                half_extents=np.asarray(half_extents, dtype=float),
                yaw=0.0,
                provenance=Provenance.GROUND_TRUTH,
            )
            self.objects.append(obj)
            return obj
        raise SimulationError(
            f"cannot place a {category} anywhere; the scene spec overfills the scene"
        )

    def place_on_wall(
        self,
        category: str,
        half_extents: np.ndarray,
        z_center: float,
        avoid: list[tuple[SceneObject, float]] | None = None,
    ) -> SceneObject:
        """Place a wall-mounted box flush against a random wall of a room."""
        hx, hy = float(half_extents[0]), float(half_extents[1])
        for _ in range(400):
            x0, y0, x1, y1 = self.room()
            side = ("s", "n", "w", "e")[int(self.rng.integers(4))]
            off = hy + 0.01
            if side in ("s", "n"):
                lo, hi = x0 + hx + 0.15, x1 - hx - 0.15
                if lo >= hi:
                    continue
                u = float(self.rng.uniform(lo, hi))
                x, y = u, (y0 + off if side == "s" else y1 - off)
                yaw = 0.0
            else:
                lo, hi = y0 + hx + 0.15, y1 - hx - 0.15
                if lo >= hi:
                    continue
                u = float(self.rng.uniform(lo, hi))
                x, y = (x0 + off if side == "w" else x1 - off), u
                yaw = math.pi / 2
            if self._collides(x, y, z_center, half_extents, yaw, category):
                continue
            if avoid and not self._clear_of(x, y, z_center, avoid):
                continue
            obj = SceneObject(
                id=self.next_id(category),
                category=category,
                center=vec3(x, y, z_center),
                half_extents=np.asarray(half_extents, dtype=float),
                yaw=yaw,
                provenance=Provenance.GROUND_TRUTH,
            )
            self.objects.append(obj)
            return obj
        raise SimulationError(
            f"cannot place a wall-mounted {category}; the scene spec overfills the scene"
        )

    def add_element(self, kind: str, width: float, height: float, sill: float) -> WallElement:
        """Cut a door/opening/window into a random wall with a free span."""
        for _ in range(400):
            wall = self.walls[int(self.rng.integers(len(self.walls)))]
            length = wall.length
            if length < width + 0.4:
                continue
            offset = float(self.rng.uniform(0.2, length - width - 0.2))
            used = self.spans.setdefault(wall.id, [])
            if any(offset < e + 0.15 and o - 0.15 < offset + width for o, e in used):
                continue
            element = WallElement(
                id=f"{kind}_{sum(e.kind == kind for e in self.elements) + 1:02d}",
                kind=kind,
                wall_id=wall.id,
                offset=offset,
                width=width,
                sill=sill,
                height=height,
            )
            used.append((offset, offset + width))
            self.elements.append(element)
            return element
        raise SimulationError(f"no wall has a free span for a {width:.2f} m {kind}")


def _layout(spec: SceneSpec) -> _Builder:
    if spec.rooms < 1:
        raise SimulationError(f"rooms must be >= 1, got {spec.rooms}")
    if spec.size_sqm <= 4:
        raise SimulationError(f"size_sqm too small: {spec.size_sqm}")
    area_per_room = spec.size_sqm / spec.rooms
    depth = math.sqrt(area_per_room / 1.3)
    room_w = area_per_room / depth
    total_w = room_w * spec.rooms

    walls = [
        Wall("wall_s", np.array([0.0, 0.0]), np.array([total_w, 0.0]), WALL_HEIGHT),
        Wall("wall_e", np.array([total_w, 0.0]), np.array([total_w, depth]), WALL_HEIGHT),
        Wall("wall_n", np.array([total_w, depth]), np.array([0.0, depth]), WALL_HEIGHT),
        Wall("wall_w", np.array([0.0, depth]), np.array([0.0, 0.0]), WALL_HEIGHT),
    ]
    rooms = []
    elements = []
    spans: dict[str, list[tuple[float, float]]] = {}
    for i in range(spec.rooms):
        rooms.append((i * room_w, 0.0, (i + 1) * room_w, depth))
        if i == 0:
            continue
        wall = Wall(
            f"wall_div{i}",
            np.array([i * room_w, 0.0]),
            np.array([i * room_w, depth]),
            WALL_HEIGHT,
        )
        walls.append(wall)
        # every divider gets a compliant connecting door
        offset = depth / 2 - DOOR_WIDTH / 2
        elements.append(
            WallElement(
                id=f"door_div{i}",
                kind="door",
                wall_id=wall.id,
                offset=offset,
                width=DOOR_WIDTH,
                sill=0.0,
                height=2.0,
            )
        )
        spans[wall.id] = [(offset, offset + DOOR_WIDTH)]
    # entrance on the south wall
    entrance_offset = room_w / 2 - DOOR_WIDTH / 2
    elements.append(
        WallElement(
            id="door_entrance",
            kind="door",
            wall_id="wall_s",
            offset=entrance_offset,
            width=DOOR_WIDTH,
            sill=0.0,
            height=2.0,
        )
    )
    spans["wall_s"] = [(entrance_offset, entrance_offset + DOOR_WIDTH)]
    return _Builder(
        rng=np.random.default_rng(spec.seed),
        rooms=rooms,
        walls=walls,
        elements=elements,
        objects=[],
        spans=spans,
    )


def _in(rng: np.random.Generator, lo: float, hi: float) -> float:
    """A uniform draw in inches, converted to meters."""
    return inches_to_meters(float(rng.uniform(lo, hi)))


def _plant(builder: _Builder, rubric_id: str, grab_bar_keepout: list) -> None:
    """Add one object/element that violates exactly the given rubric."""
    rng = builder.rng
    if rubric_id == "bed.dim_height":
        top = _in(rng, 24.5, 30) if rng.random() < 0.5 else _in(rng, 12, 19.5)
        builder.place_floor("bed", np.array([0.95, 0.7, top / 2]), top / 2)
    elif rubric_id == "table.dim_height":
        top = _in(rng, 34.5, 42) if rng.random() < 0.5 else _in(rng, 20, 27.5)
        builder.place_floor("table", np.array([0.6, 0.35, top / 2]), top / 2)
    elif rubric_id == "counter.dim_height":
        top = _in(rng, 34.5, 44) if rng.random() < 0.5 else _in(rng, 20, 27.5)
        builder.place_floor("storage", np.array([0.5, 0.3, top / 2]), top / 2)
    elif rubric_id == "cabinet.pos_height":
        bottom = _in(rng, 27.5, 30)
        top = bottom + _in(rng, 2, 4)  # stays below the 34 in counter bound
        hz = (top - bottom) / 2
        builder.place_on_wall("storage", np.array([0.45, 0.18, hz]), bottom + hz)
    elif rubric_id == "door.dim_radius":
        builder.add_element("door", _in(rng, 22, 30), 2.0, 0.0)
    elif rubric_id == "opening.dim_width":
        builder.add_element("opening", _in(rng, 24, 30), 2.0, 0.0)
    elif rubric_id == "sink.pos_height":
        bottom = _in(rng, 18, 26)
        builder.place_on_wall("sink", np.array([0.3, 0.22, 0.12]), bottom + 0.12)
    elif rubric_id in _SHARED_HANDLE_RUBRICS:
        z = _in(rng, 50, 60) if rng.random() < 0.5 else _in(rng, 20, 32)
        builder.place_on_wall("door_handle", np.array([0.06, 0.03, 0.06]), z)
    elif rubric_id == "lightswitch.pos_height":
        z = _in(rng, 50, 60) if rng.random() < 0.5 else _in(rng, 6, 13.5)
        builder.place_on_wall("light_switch", np.array([0.04, 0.015, 0.06]), z)
    elif rubric_id == "electricsocket.pos_height":
        builder.place_on_wall("electric_socket", np.array([0.04, 0.015, 0.06]), _in(rng, 3, 12))
    elif rubric_id == "grabbar_adult.pos_height":
        # out of the adult band but inside the child band
        builder.place_on_wall(
            "grab_bar", np.array([0.3, 0.05, 0.05]), _in(rng, 20, 26), avoid=grab_bar_keepout
        )
    elif rubric_id == "grabbar_child.pos_height":
        # out of the child band but inside the adult band
        builder.place_on_wall(
            "grab_bar", np.array([0.3, 0.05, 0.05]), _in(rng, 33.5, 35), avoid=grab_bar_keepout
        )
    elif rubric_id == "grabbar_existence_tub.existenceornot":
        builder.place_floor(
            "bathtub",
            np.array([0.8, 0.375, 0.275]),
            0.275,
            avoid=[(o, 0.8) for o in builder.objects if o.category == "grab_bar"],
        )
    elif rubric_id == "grabbar_existence_toilet.existenceornot":
        builder.place_floor(
            "toilet",
            np.array([0.35, 0.2, 0.225]),
            0.225,
            avoid=[(o, 0.8) for o in builder.objects if o.category == "grab_bar"],
        )
    elif rubric_id == "rug.existenceornot":
        builder.place_floor("rug", np.array([0.6, 0.4, 0.01]), 0.01)
    elif rubric_id == "scissors.existenceornot":
        builder.place_floor("scissors", np.array([0.09, 0.04, 0.012]), float(rng.uniform(0.7, 0.95)))
    elif rubric_id == "knives.existenceornot":
        builder.place_floor("knife", np.array([0.125, 0.03, 0.015]), float(rng.uniform(0.7, 0.95)))
    elif rubric_id == "medication.existenceornot":
        builder.place_floor("medication", np.array([0.04, 0.04, 0.06]), float(rng.uniform(0.7, 0.95)))
    elif rubric_id == "firealarm.existenceornot":
        pass  # absence is planted by NOT auto-placing the alarm
    else:
        raise SimulationError(f"no planting recipe for rubric {rubric_id!r}")


def _add_clutter(builder: _Builder, count: int) -> None:
    """Add compliant distractor objects (they must trigger no rubric)."""
    rng = builder.rng
    recipes = ("chair", "sofa", "television", "table_ok", "bed_ok", "switch_ok", "socket_ok")
    for _ in range(count):
        kind = recipes[int(rng.integers(len(recipes)))]
        try:
            if kind == "chair":
                builder.place_floor("chair", np.array([0.22, 0.22, 0.45]), 0.45)
            elif kind == "sofa":
                builder.place_floor("sofa", np.array([0.95, 0.42, 0.4]), 0.4)
            elif kind == "television":
                builder.place_on_wall("television", np.array([0.55, 0.04, 0.32]), 1.5)
            elif kind == "table_ok":
                top = _in(rng, 28.5, 33.5)
                builder.place_floor("table", np.array([0.6, 0.35, top / 2]), top / 2)
            elif kind == "bed_ok":
                top = _in(rng, 20.5, 22.5)
                builder.place_floor("bed", np.array([0.95, 0.7, top / 2]), top / 2)
            elif kind == "switch_ok":
                builder.place_on_wall("light_switch", np.array([0.04, 0.015, 0.06]), _in(rng, 16, 46))
            elif kind == "socket_ok":
                builder.place_on_wall("electric_socket", np.array([0.04, 0.015, 0.06]), _in(rng, 16, 46))
        except SimulationError:
            return  # clutter is best-effort; planted content takes priority


def generate_scene(
    spec: SceneSpec,
    rubrics: list[Rubric] | None = None,
) -> tuple[ParametricScene, list[GroundTruthIssue]]:
    """Build a synthetic scene and its ground truth.

    The ground truth is *re-derived* by the reference evaluator over the
    finished scene (with every rubric in ``rubrics``, default: the bundled
    set), so it stays correct even if a planting recipe and a rubric drift
    apart -- planting k violations of rubric r yields exactly k ground-truth
    instances of r.

    Raises
    ------
    SimulationError
        For unknown rubric ids, contradictory counts, or specs that
        physically do not fit the requested floor area.
    """
    rubrics = rubrics if rubrics is not None else load_default_rubrics()
    known = {r.id for r in rubrics}
    for rid in spec.planted:
        if rid not in known:
            raise SimulationError(f"planted rubric {rid!r} is not in the rubric set")
    fire = spec.planted.get("firealarm.existenceornot", 0)
    if fire > 1:
        raise SimulationError("a scene can only lack a fire alarm once; count must be <= 1")
    a = spec.planted.get(_SHARED_HANDLE_RUBRICS[0])
    b = spec.planted.get(_SHARED_HANDLE_RUBRICS[1])
    if a is not None and b is not None and a != b:
        raise SimulationError(
            "door-handle and knob rubrics measure the same object; planted counts must agree"
        )

    builder = _layout(spec)
    grab_bar_keepout = []

    # plant in sorted order for determinism; handle/knob share one planting
    shared_handles = max(a or 0, b or 0)
    for rubric_id in sorted(spec.planted):
        count = spec.planted[rubric_id]
        if count < 0:
            raise SimulationError(f"negative planted count for {rubric_id}")
        if rubric_id in _SHARED_HANDLE_RUBRICS:
            continue
        for _ in range(count):
            keepout = [
                (o, 0.8)
                for o in builder.objects
                if o.category in ("bathtub", "toilet")
            ]
            _plant(builder, rubric_id, keepout)
    for _ in range(shared_handles):
        _plant(builder, _SHARED_HANDLE_RUBRICS[0], [])

    if fire == 0:
        # a compliant space has a smoke alarm somewhere
        builder.place_on_wall("smoke_alarm", np.array([0.07, 0.025, 0.07]), 2.3)
    _add_clutter(builder, spec.clutter)

    x_max = max(float(w.end[0]) for w in builder.walls)
    y_max = max(float(w.end[1]) for w in builder.walls)
    scene = ParametricScene(
        id=spec.id or f"sim-{spec.seed:04d}",
        meta={
            "home_type": spec.home_type,
            "size": spec.size_sqm,
            "rooms": spec.rooms,
            "room_bounds": [list(r) for r in builder.rooms],
        },
        walls=builder.walls,
        elements=builder.elements,
        objects=builder.objects,
    )

    gt = [
        GroundTruthIssue(rubric_id=r.rubric_id, position=r.anchor, label=r.rubric_id)
        for r in oracle.reference_issues(scene, rubrics)
    ]
    return scene, gt


# --------------------------------------------------------------------------
# stream generation
# --------------------------------------------------------------------------

def _camera_pose(position: np.ndarray, look_at: np.ndarray, pitch: float) -> np.ndarray:
    """Camera-to-world rotation looking from position toward look_at,
    tilted a further ``pitch`` radians (positive = up)."""
    delta = look_at - position
    yaw = math.atan2(delta[1], delta[0])
    elevation = math.atan2(delta[2], math.hypot(delta[0], delta[1])) + pitch
    forward = np.array(
        [
            math.cos(elevation) * math.cos(yaw),
            math.cos(elevation) * math.sin(yaw),
            math.sin(elevation),
        ]
    )
    up = np.array([0.0, 0.0, 1.0])
    right = np.cross(forward, up)
    norm = np.linalg.norm(right)
    if norm < 1e-9:  # staring straight up/down: keep the walking bearing
        right = np.array([math.sin(yaw), -math.cos(yaw), 0.0])
    else:
        right = right / norm
    down = np.cross(forward, right)
    return np.column_stack([right, down, forward])


def _room_loop(bounds: tuple[float, float, float, float], inset: float) -> list[np.ndarray]:
    x0, y0, x1, y1 = bounds
    pad = min(inset, (x1 - x0) / 3, (y1 - y0) / 3)
    return [
        np.array([x0 + pad, y0 + pad]),
        np.array([x1 - pad, y0 + pad]),
        np.array([x1 - pad, y1 - pad]),
        np.array([x0 + pad, y1 - pad]),
        np.array([x0 + pad, y0 + pad]),
    ]


def _walk(loop: list[np.ndarray], step: float) -> list[np.ndarray]:
    points = []
    for a, b in zip(loop[:-1], loop[1:]):
        seg = b - a
        length = float(np.linalg.norm(seg))
        n = max(1, int(length / step))
        for k in range(n):
            points.append(a + seg * (k / n))
    return points


def _nearest_boundary(
    rect: tuple[float, float, float, float], p: np.ndarray
) -> np.ndarray:
    """Project an interior point onto the closest side of a rectangle."""
    x0, y0, x1, y1 = rect
    x = min(max(float(p[0]), x0), x1)
    y = min(max(float(p[1]), y0), y1)
    candidates = [
        (x - x0, np.array([x0, y])),
        (x1 - x, np.array([x1, y])),
        (y - y0, np.array([x, y0])),
        (y1 - y, np.array([x, y1])),
    ]
    return min(candidates, key=lambda c: c[0])[1]


def generate_stream(
    scene: ParametricScene,
    traj: TrajectorySpec | None = None,
) -> list[DetectionEvent]:
    """Simulate a detector over a camera walk through the scene.

    The camera covers each room in two phases.  First it walks the room's
    loop (inset from the walls) facing the room center, pitch sweeping up
    and down the way a person looks around -- this covers furniture and
    free-standing items.  Then it stops every ``stare_spacing`` meters
    along the same loop and deliberately pans the nearest wall from low to
    high (``stare_frames`` frames, aim sweeping ``stare_z``), the way a
    person inspects sockets, switches and alarms up close; from across the
    room those are routinely shadowed by furniture, and a moving camera
    never holds a steep aim long enough.  A micro-category object produces
    a detection in a frame when its center projects into the central crop,
    lies within detection range, and the line of sight is unobstructed.
    Noise channels can drop detections, jitter the box center, and inject
    false positives.
    """
    traj = traj or TrajectorySpec()
    rng = np.random.default_rng(traj.seed)
    noise = traj.noise
    intr = traj.intrinsics
    width, height = int(intr["w"]), int(intr["h"])
    crop_u = traj.central_crop * width / 2
    crop_v = traj.central_crop * height / 2

    rooms = scene.meta.get("room_bounds")
    if not rooms:
        lo, hi = scene.bounds()
        rooms = [[float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])]]

    micro = sorted(
        (o for o in scene.objects if o.category in MICRO_CATEGORIES), key=lambda o: o.id
    )
    micro_names = sorted(MICRO_CATEGORIES)

    events: list[DetectionEvent] = []
    step = traj.speed / traj.frame_rate
    frame_no = 0
    for bounds in rooms:
        x0, y0, x1, y1 = (float(v) for v in bounds)
        center = np.array([(x0 + x1) / 2, (y0 + y1) / 2, traj.camera_height - 0.2])
        rect = (x0, y0, x1, y1)
        # phase 1: walk the loop facing the center (look target None);
        # phase 2: stop along the loop and pan the nearest wall vertically
        plan: list[tuple[np.ndarray, np.ndarray | None]] = [
            (p, None) for p in _walk(_room_loop(rect, traj.inset), step)
        ]
        z_lo, z_hi = traj.stare_z
        for stop_xy in _walk(_room_loop(rect, traj.inset), traj.stare_spacing):
            wall_xy = _nearest_boundary(rect, stop_xy)
            for k in range(traj.stare_frames):
                frac = k / max(traj.stare_frames - 1, 1)
                aim = np.array([wall_xy[0], wall_xy[1], z_lo + (z_hi - z_lo) * frac])
                plan.append((stop_xy, aim))

        for position_xy, aim in plan:
            t = frame_no / traj.frame_rate
            position = np.array([position_xy[0], position_xy[1], traj.camera_height])
            if aim is None:
                pitch = math.radians(traj.pitch_amplitude_deg) * math.sin(
                    2 * math.pi * t / traj.pitch_period_s
                )
                look = center.copy()
            else:
                pitch = 0.0  # the aim sweep is the vertical motion here
                look = aim
            if np.linalg.norm(look[:2] - position[:2]) < 1e-6:
                look = look + np.array([1e-3, 0.0, 0.0])
            rotation = _camera_pose(position, look, pitch)
            frame = CameraFrame(
                position=position,
                rotation=rotation,
                fx=float(intr["fx"]),
                fy=float(intr["fy"]),
                cx=float(intr["cx"]),
                cy=float(intr["cy"]),
                width=width,
                height=height,
            )
            frame_no += 1

            for obj in micro:
                uv = frame.project(obj.center)
                if uv is None:
                    continue
                u, v = uv
                if abs(u - frame.cx) > crop_u or abs(v - frame.cy) > crop_v:
                    continue
                rng_range = float(np.linalg.norm(obj.center - position))
                if rng_range > traj.max_detect_range:
                    continue
                hit = scene.ray_intersect(position, obj.center - position)
                if hit is None or hit.entity_id != obj.id:
                    continue  # occluded
                if noise.miss_rate > 0 and rng.random() < noise.miss_rate:
                    continue
                if noise.pixel_sigma > 0:
                    u += float(rng.normal(0.0, noise.pixel_sigma))
                    v += float(rng.normal(0.0, noise.pixel_sigma))
                foot = 2 * max(float(obj.half_extents[0]), float(obj.half_extents[1]))
                size_u = min(max(frame.fx * foot / rng_range, 6.0), 160.0)
                size_v = min(max(frame.fy * 2 * float(obj.half_extents[2]) / rng_range, 6.0), 120.0)
                x = min(max(u - size_u / 2, 0.0), width - size_u)
                y = min(max(v - size_v / 2, 0.0), height - size_v)
                conf = 0.3 + 0.7 * float(rng.beta(8.0, 2.0))
                events.append(
                    DetectionEvent(
                        t=t,
                        frame=frame,
                        category=obj.category,
                        bbox=(x, y, size_u, size_v),
                        confidence=conf,
                    )
                )

            if noise.false_positive_rate > 0 and rng.random() < noise.false_positive_rate:
                category = micro_names[int(rng.integers(len(micro_names)))]
                u = frame.cx + float(rng.uniform(-crop_u, crop_u))
                v = frame.cy + float(rng.uniform(-crop_v, crop_v))
                conf = 0.3 + 0.7 * float(rng.beta(8.0, 2.0))
                events.append(
                    DetectionEvent(
                        t=t,
                        frame=frame,
                        category=category,
                        bbox=(u - 10.0, v - 10.0, 20.0, 20.0),
                        confidence=conf,
                    )
                )
    return events


def quaternion_of(frame: CameraFrame) -> np.ndarray:
    """Pose quaternion [w, x, y, z] of a frame (for stream serialization)."""
    return matrix_to_quat(frame.rotation)
