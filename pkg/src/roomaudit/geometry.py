"""Low-level 3-D geometry: vectors, quaternions, and ray intersection tests.

Conventions used throughout the package:

* world frame is right-handed with z up; the floor is the plane z = 0
* all lengths are meters
* quaternions are ``[w, x, y, z]`` and rotate camera-frame vectors into the
  world frame
* rays carry a unit direction; intersection parameters ``t`` are metric
  distances along the ray
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Minimum parameter for a hit to count as "in front of" the ray origin.
# Keeps a ray that starts exactly on a surface from re-hitting it.
T_MIN = 1e-9

_PARALLEL_EPS = 1e-12


def vec3(x: float, y: float, z: float) -> np.ndarray:
    """Build a float64 3-vector."""
    return np.array([x, y, z], dtype=float)


def normalize(v: np.ndarray) -> np.ndarray:
    """Return ``v`` scaled to unit length.

    Raises
    ------
    ValueError
        If ``v`` has (near-)zero norm.
    """
    n = float(np.linalg.norm(v))
    if n < 1e-12:
        raise ValueError("cannot normalize a zero-length vector")
    return v / n


def quat_normalize(q: np.ndarray) -> np.ndarray:
    n = float(np.linalg.norm(q))
    if n < 1e-12:
        raise ValueError("zero-norm quaternion")
    return np.asarray(q, dtype=float) / n


def quat_to_matrix(q) -> np.ndarray:
    """Convert a ``[w, x, y, z]`` quaternion to a 3x3 rotation matrix.

    The input is normalized first, so mildly denormalized pose streams are
    accepted.
    """
    w, x, y, z = quat_normalize(np.asarray(q, dtype=float))
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def matrix_to_quat(m: np.ndarray) -> np.ndarray:
    """Convert a rotation matrix to a ``[w, x, y, z]`` quaternion (w >= 0)."""
    m = np.asarray(m, dtype=float)
    tr = m[0, 0] + m[1, 1] + m[2, 2]
    if tr > 0:
        s = math.sqrt(tr + 1.0) * 2
        w = 0.25 * s
        x = (m[2, 1] - m[1, 2]) / s
        y = (m[0, 2] - m[2, 0]) / s
        z = (m[1, 0] - m[0, 1]) / s
    elif m[0, 0] > m[1, 1] and m[0, 0] > m[2, 2]:
        s = math.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2]) * 2
        w = (m[2, 1] - m[1, 2]) / s
        x = 0.25 * s
        y = (m[0, 1] + m[1, 0]) / s
        z = (m[0, 2] + m[2, 0]) / s
    elif m[1, 1] > m[2, 2]:
        s = math.sqrt(1.0 + m[1, 1] - m[0, 0] - m[2, 2]) * 2
        w = (m[0, 2] - m[2, 0]) / s
        x = (m[0, 1] + m[1, 0]) / s
        y = 0.25 * s
        z = (m[1, 2] + m[2, 1]) / s
    else:
        s = math.sqrt(1.0 + m[2, 2] - m[0, 0] - m[1, 1]) * 2
        w = (m[1, 0] - m[0, 1]) / s
        x = (m[0, 2] + m[2, 0]) / s
        y = (m[1, 2] + m[2, 1]) / s
        z = 0.25 * s
    q = np.array([w, x, y, z])
    if q[0] < 0:
        q = -q
    return quat_normalize(q)


def rot_z(yaw: float) -> np.ndarray:
    """Rotation matrix about the world z axis."""
    c, s = math.cos(yaw), math.sin(yaw)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class Ray:
    """A half-line with unit direction."""

    origin: np.ndarray
    direction: np.ndarray

    def at(self, t: float) -> np.ndarray:
        return self.origin + t * self.direction


def make_ray(origin, direction) -> Ray:
    """Construct a :class:`Ray`, normalizing ``direction``."""
    return Ray(np.asarray(origin, dtype=float), normalize(np.asarray(direction, dtype=float)))


def ray_plane_z0(ray: Ray) -> float | None:
    """Parameter of the intersection with the plane z = 0, or None.

    Rays travelling parallel to the floor (|dz| ~ 0) never hit it.
    """
    dz = ray.direction[2]
    if abs(dz) < _PARALLEL_EPS:
        return None
    t = -ray.origin[2] / dz
    return t if t > T_MIN else None


def ray_rect(ray: Ray, base: np.ndarray, edge_u: np.ndarray, edge_v: np.ndarray) -> float | None:
    """Intersect a ray with the parallelogram ``base + a*edge_u + b*edge_v``.

    Parameters
    ----------
    base : ndarray
        One corner of the rectangle.
    edge_u, edge_v : ndarray
        The two (non-parallel) edge vectors; the rectangle spans
        ``a, b in [0, 1]``.

    Returns
    -------
    float or None
        Ray parameter of the hit, or None when the ray misses.
    """
    normal = np.cross(edge_u, edge_v)
    denom = float(normal @ ray.direction)
    if abs(denom) < _PARALLEL_EPS:
        return None
    t = float(normal @ (base - ray.origin)) / denom
    if t <= T_MIN:
        return None
    p = ray.at(t) - base
    a = float(p @ edge_u) / float(edge_u @ edge_u)
    b = float(p @ edge_v) / float(edge_v @ edge_v)
    if 0.0 <= a <= 1.0 and 0.0 <= b <= 1.0:
        return t
    return None


def ray_box(
    ray: Ray,
    center: np.ndarray,
    half_extents: np.ndarray,
    yaw: float = 0.0,
) -> float | None:
    """Intersect a ray with a box rotated by ``yaw`` about the world z axis.

    Uses the slab method in the box frame.  If the origin lies inside the
    box the exit parameter is returned, so the hit point is always on the
    box surface.
    """
    rot = rot_z(-yaw)
    o = rot @ (ray.origin - center)
    d = rot @ ray.direction

    t_near, t_far = -math.inf, math.inf
    for k in range(3):
        if abs(d[k]) < _PARALLEL_EPS:
            if abs(o[k]) > half_extents[k]:
                return None
            continue
        t1 = (-half_extents[k] - o[k]) / d[k]
        t2 = (half_extents[k] - o[k]) / d[k]
        if t1 > t2:
            t1, t2 = t2, t1
        t_near = max(t_near, t1)
        t_far = min(t_far, t2)
        if t_near > t_far:
            return None
    if t_far <= T_MIN:
        return None
    return t_near if t_near > T_MIN else t_far


def point_in_box(
    point: np.ndarray,
    center: np.ndarray,
    half_extents: np.ndarray,
    yaw: float = 0.0,
    pad: float = 0.0,
) -> bool:
    """True if ``point`` lies inside the (optionally padded) oriented box."""
    local = rot_z(-yaw) @ (np.asarray(point, dtype=float) - center)
    return bool(np.all(np.abs(local) <= half_extents + pad))


def box_surface_distance(
    point: np.ndarray,
    center: np.ndarray,
    half_extents: np.ndarray,
    yaw: float = 0.0,
) -> float:
    """Unsigned distance from ``point`` to the box *surface* (0 on it)."""
    local = np.abs(rot_z(-yaw) @ (np.asarray(point, dtype=float) - center))
    gap = local - half_extents
    if np.all(gap <= 0):
        # inside: distance to the nearest face
        return float(-np.max(gap))
    outside = np.maximum(gap, 0.0)
    return float(np.linalg.norm(outside))
