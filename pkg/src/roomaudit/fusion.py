"""2-D detection to 3-D fusion: pinhole rays, raycasting, and clustering.

The live system this mirrors shoots a ray through the center of each 2-D
detection box, intersects it with the scene geometry, and keeps a running
per-class set of candidate clusters.  A cluster only becomes an object once
enough consistent evidence has accumulated:

* detections at or below the confidence gate are dropped (strictly greater
  than 0.65 passes),
* a hit joins the nearest same-class cluster only when it lies strictly
  closer than 0.3 m to that cluster's running mean, otherwise it seeds a
  new cluster,
* a cluster is emitted only once it holds at least 5 accepted rays.

Camera convention: x right, y down, z forward; the pose quaternion
``[w, x, y, z]`` rotates camera vectors into the world frame.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .geometry import Ray, make_ray, quat_to_matrix
from .scene import CATEGORIES, MAX_RAY_RANGE, ParametricScene, Provenance, SceneObject

log = logging.getLogger(__name__)


class StreamError(ValueError):
    """A detection-stream record is malformed; the message names the line."""


@dataclass(frozen=True)
class CameraFrame:
    """A posed pinhole camera."""

    position: np.ndarray  # (3,) world
    rotation: np.ndarray  # (3, 3) camera-to-world
    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int

    @classmethod
    def from_pose(cls, position, quaternion, intrinsics: dict) -> "CameraFrame":
        return cls(
            position=np.asarray(position, dtype=float),
            rotation=quat_to_matrix(quaternion),
            fx=float(intrinsics["fx"]),
            fy=float(intrinsics["fy"]),
            cx=float(intrinsics["cx"]),
            cy=float(intrinsics["cy"]),
            width=int(intrinsics["w"]),
            height=int(intrinsics["h"]),
        )

    def pixel_to_ray(self, u: float, v: float) -> Ray:
        """World-space ray through pixel (u, v)."""
        d_cam = np.array([(u - self.cx) / self.fx, (v - self.cy) / self.fy, 1.0])
        return make_ray(self.position, self.rotation @ d_cam)

    def project(self, point) -> tuple[float, float] | None:
        """Project a world point to pixel coordinates.

        Returns None for points at or behind the camera plane.
        """
        p_cam = self.rotation.T @ (np.asarray(point, dtype=float) - self.position)
        z = p_cam[2]
        if z <= 1e-9:
            return None
        return (
            self.fx * p_cam[0] / z + self.cx,
            self.fy * p_cam[1] / z + self.cy,
        )


@dataclass(frozen=True)
class DetectionEvent:
    """One 2-D detection from the stream."""

    t: float
    frame: CameraFrame
    category: str
    bbox: tuple[float, float, float, float]  # x, y, w, h in pixels
    confidence: float

    @property
    def bbox_center(self) -> tuple[float, float]:
        x, y, w, h = self.bbox
        return (x + w / 2.0, y + h / 2.0)


@dataclass(frozen=True)
class FusionConfig:
    """Gates for cluster formation (defaults follow the live system)."""

    min_rays: int = 5
    max_offset: float = 0.3
    min_confidence: float = 0.65
    max_range: float = MAX_RAY_RANGE


@dataclass
class CandidateCluster:
    """A running same-class cluster of raycast hit points."""

    category: str
    centroid: np.ndarray  # running arithmetic mean of all member points
    count: int
    confidence_sum: float

    def add(self, point: np.ndarray, confidence: float) -> None:
        self.count += 1
        self.centroid = self.centroid + (point - self.centroid) / self.count
        self.confidence_sum += confidence

    @property
    def mean_confidence(self) -> float:
        return self.confidence_sum / self.count


class Fusion:
    """Incremental fusion state over a fixed scene.

    Feed events with :meth:`ingest`, then call :meth:`finalize` for the
    fused objects.  ``diagnostics`` counts what happened to every event.
    """

    def __init__(self, scene: ParametricScene, config: FusionConfig | None = None):
        self.scene = scene
        self.config = config or FusionConfig()
        self.clusters: list[CandidateCluster] = []
        self.diagnostics: dict[str, int] = {
            "events": 0,
            "low_confidence": 0,
            "ray_miss": 0,
            "accepted": 0,
        }

    def ingest(self, event: DetectionEvent) -> None:
        """Process one detection: gate, raycast, and cluster."""
        self.diagnostics["events"] += 1
        if not event.confidence > self.config.min_confidence:
            self.diagnostics["low_confidence"] += 1
            return
        u, v = event.bbox_center
        ray = event.frame.pixel_to_ray(u, v)
        hit = self.scene.ray_intersect(ray.origin, ray.direction, self.config.max_range)
        if hit is None:
            self.diagnostics["ray_miss"] += 1
            return
        self.diagnostics["accepted"] += 1
        self._cluster(event.category, hit.point, event.confidence)

    def ingest_all(self, events: Iterable[DetectionEvent]) -> None:
        for event in events:
            self.ingest(event)

    def _cluster(self, category: str, point: np.ndarray, confidence: float) -> None:
        nearest: CandidateCluster | None = None
        nearest_d = math.inf
        for cluster in self.clusters:
            if cluster.category != category:
                continue
            d = float(np.linalg.norm(point - cluster.centroid))
            if d < nearest_d:
                nearest, nearest_d = cluster, d
        if nearest is not None and nearest_d < self.config.max_offset:
            nearest.add(point, confidence)
        else:
            self.clusters.append(
                CandidateCluster(
                    category=category,
                    centroid=np.asarray(point, dtype=float).copy(),
                    count=1,
                    confidence_sum=confidence,
                )
            )

    def finalize(self) -> list[SceneObject]:
        """Emit fused objects for every cluster that passed the ray gate.

        Objects get per-class default extents (the detector only localizes a
        point), zero yaw, deterministic ids, and the cluster's mean detection
        confidence.
        """
        emitted = [c for c in self.clusters if c.count >= self.config.min_rays]
        emitted.sort(
            key=lambda c: (c.category, c.centroid[0], c.centroid[1], c.centroid[2])
        )
        extents = _default_extents()
        objects = []
        counters: dict[str, int] = {}
        for cluster in emitted:
            n = counters.get(cluster.category, 0) + 1
            counters[cluster.category] = n
            objects.append(
                SceneObject(
                    id=f"fused_{cluster.category}_{n:03d}",
                    category=cluster.category,
                    center=cluster.centroid.copy(),
                    half_extents=extents[cluster.category],
                    yaw=0.0,
                    provenance=Provenance.FUSED_DETECTION,
                    confidence=cluster.mean_confidence,
                )
            )
        self.diagnostics["clusters"] = len(self.clusters)
        self.diagnostics["emitted"] = len(objects)
        self.diagnostics["suppressed"] = len(self.clusters) - len(objects)
        return objects


def fuse_stream(
    scene: ParametricScene,
    events: Iterable[DetectionEvent],
    config: FusionConfig | None = None,
) -> tuple[list[SceneObject], dict[str, int]]:
    """One-shot convenience wrapper: ingest everything, then finalize."""
    state = Fusion(scene, config)
    state.ingest_all(events)
    objects = state.finalize()
    return objects, state.diagnostics


_EXTENTS_CACHE: dict[str, np.ndarray] | None = None


def _default_extents() -> dict[str, np.ndarray]:
    """Half extents per category, loaded from the bundled sidecar.

    The sidecar stores full extents (width, depth, height in meters); they
    are halved here.
    """
    global _EXTENTS_CACHE
    if _EXTENTS_CACHE is None:
        path = Path(__file__).parent / "data" / "fused_extents.json"
        raw = json.loads(path.read_text(encoding="utf-8"))
        _EXTENTS_CACHE = {
            category: np.array(size, dtype=float) / 2.0 for category, size in raw.items()
        }
    return _EXTENTS_CACHE


# ---------------------------------------------------------------------------
# stream I/O
# ---------------------------------------------------------------------------

def _stream_record(raw: dict, path: str) -> DetectionEvent:
    try:
        pose = raw["pose"]
        intrinsics = raw["intrinsics"]
        frame = CameraFrame.from_pose(pose["p"], pose["q"], intrinsics)
        category = str(raw["class"])
        bbox = tuple(float(v) for v in raw["bbox"])
        event = DetectionEvent(
            t=float(raw["t"]),
            frame=frame,
            category=category,
            bbox=bbox,  # type: ignore[arg-type]
            confidence=float(raw["conf"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise StreamError(f"{path}: malformed detection record ({exc})") from exc

    if category not in CATEGORIES:
        raise StreamError(f"{path}: unknown class {category!r}")
    if not 0.0 <= event.confidence <= 1.0:
        raise StreamError(f"{path}: confidence {event.confidence} outside [0, 1]")
    x, y, w, h = event.bbox
    if w <= 0 or h <= 0:
        raise StreamError(f"{path}: bbox must have positive size")
    if x < 0 or y < 0 or x + w > frame.width or y + h > frame.height:
        raise StreamError(f"{path}: bbox {event.bbox} extends outside the frame")
    return event


def parse_stream(source: str | Path | Iterable[str]) -> list[DetectionEvent]:
    """Parse a JSON-Lines detection stream.

    ``source`` may be a path or an iterable of lines.  Blank lines are
    skipped.  Raises :class:`StreamError` naming the offending line.
    """
    if isinstance(source, (str, Path)):
        try:
            lines = Path(source).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise StreamError(f"cannot read stream {source}: {exc}") from exc
    else:
        lines = list(source)
    events = []
    for i, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise StreamError(f"line {i}: invalid JSON ({exc})") from exc
        events.append(_stream_record(raw, f"line {i}"))
    return events


def serialize_stream(events: Iterable[DetectionEvent]) -> str:
    """Serialize events back to JSON Lines (inverse of :func:`parse_stream`)."""
    from .geometry import matrix_to_quat

    out = []
    for e in events:
        out.append(
            json.dumps(
                {
                    "t": e.t,
                    "pose": {
                        "p": [float(v) for v in e.frame.position],
                        "q": [float(v) for v in matrix_to_quat(e.frame.rotation)],
                    },
                    "intrinsics": {
                        "fx": e.frame.fx,
                        "fy": e.frame.fy,
                        "cx": e.frame.cx,
                        "cy": e.frame.cy,
                        "w": e.frame.width,
                        "h": e.frame.height,
                    },
                    "class": e.category,
                    "bbox": [float(v) for v in e.bbox],
                    "conf": e.confidence,
                },
                sort_keys=True,
            )
        )
    return "\n".join(out) + ("\n" if out else "")
