"""Rubric evaluation over parametric scenes: issue generation and status flow.

:func:`evaluate` applies a rubric list to a scene and produces
:class:`Issue` records with deterministic ids.  Measurements are taken in
meters from the scene and converted to inches for comparison because the
rubric thresholds are written in inches.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .rubrics import Anchor, CheckKind, Rubric
from .scene import ParametricScene, SceneObject, object_distance
from .units import inches_to_meters, meters_to_inches


class IssueCategory(str, Enum):
    OBJECT_DIMENSION = "ObjectDimension"
    OBJECT_POSITION = "ObjectPosition"
    RISKY_ITEM = "RiskyItem"
    LACK_OF_ASSISTIVE = "LackOfAssistiveItem"


class IssueStatus(str, Enum):
    ACTIVE = "active"
    CONFIRMED = "confirmed"
    DISMISSED = "dismissed"


class IssueTransitionError(ValueError):
    """Raised for review-status changes the workflow does not allow."""


@dataclass(frozen=True)
class Measured:
    """A measured quantity with its unit ('in' for rubric comparisons)."""

    value: float
    unit: str = "in"


@dataclass
class Issue:
    """One detected accessibility or safety problem."""

    id: str
    rubric_id: str
    category: IssueCategory
    subject_ids: tuple[str, ...]
    anchor: np.ndarray  # (3,) world point the issue is pinned to
    message: str
    measured: Measured | None = None
    status: IssueStatus = IssueStatus.ACTIVE


def rubric_category(rubric: Rubric) -> IssueCategory:
    """Issue category implied by the rubric's check kind."""
    if rubric.check is CheckKind.DIMENSION:
        return IssueCategory.OBJECT_DIMENSION
    if rubric.check is CheckKind.POSITION:
        return IssueCategory.OBJECT_POSITION
    if rubric.existence is False:
        return IssueCategory.RISKY_ITEM
    return IssueCategory.LACK_OF_ASSISTIVE


def resolve_message(rubric: Rubric, measured: float | None = None) -> str:
    """Fill the rubric message template for a concrete violation.

    ``PLACEHOLDER`` becomes ``short`` when the measured value sits below the
    compliant band and ``tall`` when it sits above.  Messages without a
    placeholder pass through unchanged.

    Raises
    ------
    ValueError
        If the message needs a measured value and none was given, or the
        value is inside the compliant band (no violation to describe).
    """
    if "PLACEHOLDER" not in rubric.message:
        return rubric.message
    if measured is None:
        raise ValueError(f"{rubric.id}: message needs a measured value to resolve PLACEHOLDER")
    if rubric.comparison is None:
        raise ValueError(f"{rubric.id}: no comparison to classify the measured value against")
    side = rubric.comparison.side(measured)
    if side == "inside":
        raise ValueError(
            f"{rubric.id}: measured value {measured} is compliant; nothing to report"
        )
    word = "short" if side == "low" else "tall"
    return rubric.message.replace("PLACEHOLDER", word)


def _anchored_height(obj: SceneObject, anchor: Anchor | None) -> float:
    if anchor is Anchor.TOP or anchor is None:
        return obj.top_height
    if anchor is Anchor.BOTTOM:
        return obj.bottom_height
    return obj.center_height


def _anchor_point(obj: SceneObject, anchor: Anchor | None) -> np.ndarray:
    """Where the issue marker sits: the object center at the measured height."""
    z = _anchored_height(obj, anchor) if anchor is not None else obj.center_height
    return np.array([obj.center[0], obj.center[1], z])


@dataclass
class _Pending:
    rubric: Rubric
    subject_ids: tuple[str, ...]
    anchor: np.ndarray
    message: str
    measured: Measured | None


def _eval_element_dimension(rubric: Rubric, scene: ParametricScene) -> list[_Pending]:
    out = []
    for element in scene.elements_of(rubric.target):
        width_in = meters_to_inches(element.width)
        if rubric.comparison.satisfied(width_in):
            continue
        out.append(
            _Pending(
                rubric=rubric,
                subject_ids=(element.id,),
                anchor=scene.element_center(element),
                message=resolve_message(rubric, width_in),
                measured=Measured(width_in),
            )
        )
    return out


def _eval_object_measure(rubric: Rubric, scene: ParametricScene) -> list[_Pending]:
    out = []
    for obj in scene.objects_of(rubric.target):
        measured_in = meters_to_inches(_anchored_height(obj, rubric.anchor))
        if rubric.comparison.satisfied(measured_in):
            continue
        out.append(
            _Pending(
                rubric=rubric,
                subject_ids=(obj.id,),
                anchor=_anchor_point(obj, rubric.anchor),
                message=resolve_message(rubric, measured_in),
                measured=Measured(measured_in),
            )
        )
    return out


def _eval_existence(rubric: Rubric, scene: ParametricScene) -> list[_Pending]:
    targets = scene.objects_of(rubric.target)
    out = []
    if rubric.existence is False:
        # risky item: flag every instance
        for obj in targets:
            out.append(
                _Pending(
                    rubric=rubric,
                    subject_ids=(obj.id,),
                    anchor=obj.center.copy(),
                    message=rubric.message,
                    measured=None,
                )
            )
        return out

    if not rubric.dependency:
        # required somewhere in the space: a single scene-level issue
        if not targets:
            out.append(
                _Pending(
                    rubric=rubric,
                    subject_ids=(),
                    anchor=scene.anchor(),
                    message=rubric.message,
                    measured=None,
                )
            )
        return out

    # required near each dependency object
    radius_m = inches_to_meters(rubric.relative_position.values[0])
    for dep_category in rubric.dependency:
        for dep in scene.objects_of(dep_category):
            served = any(object_distance(dep, t) <= radius_m for t in targets)
            if served:
                continue
            out.append(
                _Pending(
                    rubric=rubric,
                    subject_ids=(dep.id,),
                    anchor=dep.center.copy(),
                    message=rubric.message,
                    measured=None,
                )
            )
    return out


def evaluate(scene: ParametricScene, rubrics: list[Rubric]) -> list[Issue]:
    """Apply ``rubrics`` to ``scene`` and return issues.

    The result is deterministic: issues are sorted by (rubric id, subject
    ids) and numbered ``i0001``, ``i0002``, ... in that order.
    """
    pending: list[_Pending] = []
    for rubric in rubrics:
        if rubric.targets_element:
            pending.extend(_eval_element_dimension(rubric, scene))
        elif rubric.check in (CheckKind.DIMENSION, CheckKind.POSITION):
            pending.extend(_eval_object_measure(rubric, scene))
        else:
            pending.extend(_eval_existence(rubric, scene))

    pending.sort(key=lambda p: (p.rubric.id, p.subject_ids))
    issues = []
    for n, p in enumerate(pending, start=1):
        issues.append(
            Issue(
                id=f"i{n:04d}",
                rubric_id=p.rubric.id,
                category=rubric_category(p.rubric),
                subject_ids=p.subject_ids,
                anchor=p.anchor,
                message=p.message,
                measured=p.measured,
            )
        )
    return issues


_ALLOWED_TRANSITIONS = {
    (IssueStatus.ACTIVE, IssueStatus.CONFIRMED),
    (IssueStatus.ACTIVE, IssueStatus.DISMISSED),
}


def set_issue_status(issues: list[Issue], issue_id: str, new_status: IssueStatus) -> Issue:
    """Apply a review decision to one issue.

    Only ``active -> confirmed`` and ``active -> dismissed`` are allowed;
    setting a status the issue already has is an idempotent no-op.

    Raises
    ------
    KeyError
        If no issue has ``issue_id``.
    IssueTransitionError
        For any other transition (confirmed and dismissed are final).
    """
    new_status = IssueStatus(new_status)
    for issue in issues:
        if issue.id != issue_id:
            continue
        if issue.status == new_status:
            return issue
        if (issue.status, new_status) not in _ALLOWED_TRANSITIONS:
            raise IssueTransitionError(
                f"cannot change issue {issue_id} from {issue.status.value} to {new_status.value}"
            )
        issue.status = new_status
        return issue
    raise KeyError(f"no issue with id {issue_id!r}")
