"""Slow reference evaluator, kept independent of the rubric engine.

This walks every (rubric, entity) pair with plain loops and does all its
comparisons in meters (converting the inch thresholds once), whereas the
engine in :mod:`roomaudit.audit` converts measurements to inches.  The two
must agree on every scene; the simulator derives its ground truth from this
module rather than trusting its own planting bookkeeping, and the test suite
cross-checks the engine against it on randomized scenes.

Deliberately no code is shared with :mod:`roomaudit.audit` beyond the data
model, so a bug in one route cannot hide in the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


from .rubrics import Rubric
from .scene import ParametricScene

_M_PER_IN = 0.0254


@dataclass(frozen=True)
class ReferenceIssue:
    """A minimal issue record: enough to compare against the engine."""

    rubric_id: str
    subject_ids: tuple[str, ...]
    anchor: tuple[float, float, float]


def _meters(value_in: float) -> float:
    return value_in * _M_PER_IN


def _holds(op: str, values_m: tuple[float, ...], measured_m: float) -> bool:
    if op == "Between":
        return values_m[0] <= measured_m <= values_m[1]
    if op == "LessThan":
        return measured_m <= values_m[0]
    if op == "GreaterThan":
        return measured_m >= values_m[0]
    raise ValueError(op)


def _object_height_m(obj, anchor) -> float:
    z = float(obj.center[2])
    hz = float(obj.half_extents[2])
    name = getattr(anchor, "value", anchor)
    if name == "bottom":
        return z - hz
    if name == "center":
        return z
    # dimension checks default to the top face
    return z + hz


def _scene_anchor(scene: ParametricScene) -> tuple[float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    for w in scene.walls:
        xs += [float(w.start[0]), float(w.end[0])]
        ys += [float(w.start[1]), float(w.end[1])]
    for o in scene.objects:
        r = math.hypot(float(o.half_extents[0]), float(o.half_extents[1]))
        xs += [float(o.center[0]) - r, float(o.center[0]) + r]
        ys += [float(o.center[1]) - r, float(o.center[1]) + r]
    if not xs:
        return (0.0, 0.0, 0.0)
    return ((min(xs) + max(xs)) / 2.0, (min(ys) + max(ys)) / 2.0, 0.0)


def _element_anchor(scene: ParametricScene, element) -> tuple[float, float, float]:
    wall = scene.wall_by_id(element.wall_id)
    dx = float(wall.end[0] - wall.start[0])
    dy = float(wall.end[1] - wall.start[1])
    length = math.hypot(dx, dy)
    f = (element.offset + element.width / 2.0) / length
    return (
        float(wall.start[0]) + f * dx,
        float(wall.start[1]) + f * dy,
        element.sill + element.height / 2.0,
    )


def reference_issues(scene: ParametricScene, rubrics: list[Rubric]) -> list[ReferenceIssue]:
    """Evaluate every rubric the slow way; result sorted by (rubric, subject)."""
    found: list[ReferenceIssue] = []

    for rubric in rubrics:
        kind = rubric.check.value

        if kind == "dimension" and rubric.target in ("door", "opening", "window"):
            values_m = tuple(_meters(v) for v in rubric.comparison.values)
            for element in scene.elements:
                if element.kind != rubric.target:
                    continue
                if _holds(rubric.comparison.op, values_m, element.width):
                    continue
                found.append(
                    ReferenceIssue(rubric.id, (element.id,), _element_anchor(scene, element))
                )

        elif kind in ("dimension", "position"):
            values_m = tuple(_meters(v) for v in rubric.comparison.values)
            for obj in scene.objects:
                if obj.category != rubric.target:
                    continue
                h = _object_height_m(obj, rubric.anchor)
                if _holds(rubric.comparison.op, values_m, h):
                    continue
                found.append(
                    ReferenceIssue(
                        rubric.id,
                        (obj.id,),
                        (float(obj.center[0]), float(obj.center[1]), h),
                    )
                )

        elif rubric.existence is False:
            for obj in scene.objects:
                if obj.category != rubric.target:
                    continue
                found.append(
                    ReferenceIssue(
                        rubric.id,
                        (obj.id,),
                        (float(obj.center[0]), float(obj.center[1]), float(obj.center[2])),
                    )
                )

        elif not rubric.dependency:
            present = False
            for obj in scene.objects:
                if obj.category == rubric.target:
                    present = True
                    break
            if not present:
                found.append(ReferenceIssue(rubric.id, (), _scene_anchor(scene)))

        else:
            radius_m = _meters(rubric.relative_position.values[0])
            helpers = [o for o in scene.objects if o.category == rubric.target]
            for dep_category in rubric.dependency:
                for dep in scene.objects:
                    if dep.category != dep_category:
                        continue
                    near = False
                    for helper in helpers:
                        d = math.dist(
                            (float(dep.center[0]), float(dep.center[1]), float(dep.center[2])),
                            (
                                float(helper.center[0]),
                                float(helper.center[1]),
                                float(helper.center[2]),
                            ),
                        )
                        if d <= radius_m:
                            near = True
                            break
                    if not near:
                        found.append(
                            ReferenceIssue(
                                rubric.id,
                                (dep.id,),
                                (
                                    float(dep.center[0]),
                                    float(dep.center[1]),
                                    float(dep.center[2]),
                                ),
                            )
                        )

    found.sort(key=lambda r: (r.rubric_id, r.subject_ids))
    return found
