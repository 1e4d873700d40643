"""Scan report documents: assembly, canonical serialization, persistence.

A report is a single self-contained JSON document: the audited scene, the
normalized rubric definitions, the fused objects, the issues with their
review status, and diagnostics.  Serialization is canonical (sorted keys,
fixed indentation, no wall-clock data unless explicitly requested), so the
same audit always produces byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .audit import Issue, IssueCategory, IssueStatus, Measured, set_issue_status
from .rubrics import Rubric
from .scene import ParametricScene, SceneObject, scene_from_dict, scene_to_dict
from .units import CM_PER_INCH, METERS_PER_INCH

SCHEMA_VERSION = 1


class ReportError(ValueError):
    """A report file is malformed or uses an unsupported schema."""


@dataclass
class ScanReport:
    """An audit run over one scene."""

    report_id: str
    scene: ParametricScene
    issues: list[Issue]
    rubrics: dict[str, dict]  # rubric id -> serialized rubric definition
    communities: list[str] = field(default_factory=list)
    excluded_rubrics: list[str] = field(default_factory=list)
    fused_objects: list[SceneObject] = field(default_factory=list)
    diagnostics: dict[str, int] = field(default_factory=dict)
    tool_version: str = __version__
    rubric_version: str = ""
    scan_seconds: float | None = None

    def issue(self, issue_id: str) -> Issue:
        for i in self.issues:
            if i.id == issue_id:
                return i
        raise KeyError(f"no issue with id {issue_id!r}")

    def set_status(self, issue_id: str, status: IssueStatus) -> Issue:
        return set_issue_status(self.issues, issue_id, status)

    def summary(self) -> dict:
        by_category: dict[str, int] = {}
        by_status: dict[str, int] = {}
        for issue in self.issues:
            by_category[issue.category.value] = by_category.get(issue.category.value, 0) + 1
            by_status[issue.status.value] = by_status.get(issue.status.value, 0) + 1
        return {
            "total": len(self.issues),
            "by_category": by_category,
            "by_status": by_status,
        }


def serialize_rubric(rubric: Rubric) -> dict:
    """A rubric as a plain dict for embedding in reports."""
    return {
        "id": rubric.id,
        "name": rubric.name,
        "check": rubric.check.value,
        "target": rubric.target,
        "communities": list(rubric.communities),
        "message": rubric.message,
        "comparison": (
            {"op": rubric.comparison.op, "values": list(rubric.comparison.values)}
            if rubric.comparison
            else None
        ),
        "dependency": list(rubric.dependency),
        "relative_position": (
            {"op": rubric.relative_position.op, "values": list(rubric.relative_position.values)}
            if rubric.relative_position
            else None
        ),
        "existence": rubric.existence,
        "anchor": rubric.anchor.value if rubric.anchor else None,
        "note": rubric.note,
        "description": rubric.description,
        "suggestions": list(rubric.suggestions),
        "sources": [dict(s) for s in rubric.sources],
    }


def rubric_fingerprint(rubrics: Sequence[Rubric]) -> str:
    """Short stable hash of a rubric set (for report provenance)."""
    canonical = json.dumps(
        [serialize_rubric(r) for r in sorted(rubrics, key=lambda r: r.id)],
        sort_keys=True,
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def issue_to_dict(issue: Issue) -> dict:
    doc: dict[str, Any] = {
        "id": issue.id,
        "rubric_id": issue.rubric_id,
        "category": issue.category.value,
        "subject_ids": list(issue.subject_ids),
        "anchor": [float(v) for v in issue.anchor],
        "message": issue.message,
        "status": issue.status.value,
        "measured": None,
    }
    if issue.measured is not None:
        value_in = issue.measured.value
        doc["measured"] = {
            "value": value_in,
            "unit": issue.measured.unit,
            "cm": value_in * CM_PER_INCH,
            "meters": value_in * METERS_PER_INCH,
        }
    return doc


def issue_from_dict(doc: dict) -> Issue:
    measured = None
    if doc.get("measured") is not None:
        measured = Measured(value=float(doc["measured"]["value"]), unit=str(doc["measured"]["unit"]))
    return Issue(
        id=str(doc["id"]),
        rubric_id=str(doc["rubric_id"]),
        category=IssueCategory(doc["category"]),
        subject_ids=tuple(doc["subject_ids"]),
        anchor=np.array([float(v) for v in doc["anchor"]]),
        message=str(doc["message"]),
        measured=measured,
        status=IssueStatus(doc["status"]),
    )


def build_report(
    scene: ParametricScene,
    issues: list[Issue],
    rubrics: Sequence[Rubric],
    communities: Sequence[str] = (),
    excluded_rubrics: Sequence[str] = (),
    fused_objects: Sequence[SceneObject] = (),
    diagnostics: dict[str, int] | None = None,
    scan_seconds: float | None = None,
) -> ScanReport:
    """Assemble a report; the id is a stable hash of scene + configuration."""
    fingerprint = rubric_fingerprint(rubrics)
    key = json.dumps(
        {
            "scene": scene_to_dict(scene),
            "rubrics": fingerprint,
            "communities": sorted(communities),
            "excluded": sorted(excluded_rubrics),
        },
        sort_keys=True,
    )
    report_id = hashlib.sha256(key.encode("utf-8")).hexdigest()[:12]
    return ScanReport(
        report_id=report_id,
        scene=scene,
        issues=list(issues),
        rubrics={r.id: serialize_rubric(r) for r in rubrics},
        communities=list(communities),
        excluded_rubrics=list(excluded_rubrics),
        fused_objects=list(fused_objects),
        diagnostics=dict(diagnostics or {}),
        rubric_version=fingerprint,
        scan_seconds=scan_seconds,
    )


def report_to_dict(report: ScanReport) -> dict:
    objects = scene_to_dict(
        ParametricScene(id="_", objects=list(report.fused_objects))
    )["objects"]
    return {
        "schema": SCHEMA_VERSION,
        "report_id": report.report_id,
        "tool_version": report.tool_version,
        "rubric_version": report.rubric_version,
        "scene": scene_to_dict(report.scene),
        "communities": list(report.communities),
        "excluded_rubrics": list(report.excluded_rubrics),
        "rubrics": report.rubrics,
        "fused_objects": objects,
        "issues": [issue_to_dict(i) for i in report.issues],
        "diagnostics": report.diagnostics,
        "timings": {"scan_seconds": report.scan_seconds},
        "summary": report.summary(),
    }


def report_from_dict(doc: dict) -> ScanReport:
    if not isinstance(doc, dict):
        raise ReportError("report must be a JSON object")
    schema = doc.get("schema")
    if schema != SCHEMA_VERSION:
        raise ReportError(f"unsupported report schema {schema!r} (expected {SCHEMA_VERSION})")
    try:
        scene = scene_from_dict(doc["scene"])
        fused_scene = scene_from_dict(
            {"id": "_", "meta": {}, "walls": [], "elements": [], "objects": doc.get("fused_objects", [])}
        )
        report = ScanReport(
            report_id=str(doc["report_id"]),
            scene=scene,
            issues=[issue_from_dict(i) for i in doc.get("issues", [])],
            rubrics=dict(doc.get("rubrics", {})),
            communities=list(doc.get("communities", [])),
            excluded_rubrics=list(doc.get("excluded_rubrics", [])),
            fused_objects=fused_scene.objects,
            diagnostics=dict(doc.get("diagnostics", {})),
            tool_version=str(doc.get("tool_version", "")),
            rubric_version=str(doc.get("rubric_version", "")),
            scan_seconds=doc.get("timings", {}).get("scan_seconds"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ReportError):
            raise
        raise ReportError(f"malformed report: {exc}") from exc
    return report


def serialize_report(report: ScanReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_report(report: ScanReport, path: str | Path) -> None:
    """Write atomically: the file is either the old or the new report."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(serialize_report(report), encoding="utf-8")
    os.replace(tmp, path)


def load_report(path: str | Path) -> ScanReport:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ReportError(f"cannot read report {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportError(f"invalid JSON in report {path}: {exc}") from exc
    return report_from_dict(doc)
