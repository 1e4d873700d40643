"""Desk-scale indoor accessibility and safety auditing.

Parametric scenes go in, structured issue reports come out.  The package
covers the full loop: scene ingestion, fusing a 2D detection stream into
3D objects by raycasting, rule evaluation against a JSON rubric file,
match-based scoring against annotated ground truth, inter-scan
consistency, and a seeded simulator for end-to-end exercises.
"""

__version__ = "0.1.0"

from .audit import Issue, IssueCategory, IssueStatus, evaluate, set_issue_status
from .evaluation import (
    GroundTruthIssue,
    Metrics,
    compute_metrics,
    krippendorff_alpha,
    load_ground_truth,
    match_issues,
)
from .fusion import CameraFrame, DetectionEvent, FusionConfig, fuse_stream, parse_stream
from .pipeline import evaluation_scene, run_audit
from .report import ScanReport, build_report, load_report, save_report
from .rubrics import Rubric, load_default_rubrics, parse_rubrics, select_active
from .scene import (
    ParametricScene,
    SceneError,
    SceneObject,
    Wall,
    WallElement,
    load_scene,
    save_scene,
)
from .simulate import NoiseSpec, SceneSpec, TrajectorySpec, generate_scene, generate_stream

__all__ = [
    "__version__",
    "CameraFrame",
    "DetectionEvent",
    "FusionConfig",
    "GroundTruthIssue",
    "Issue",
    "IssueCategory",
    "IssueStatus",
    "Metrics",
    "NoiseSpec",
    "ParametricScene",
    "Rubric",
    "ScanReport",
    "SceneError",
    "SceneObject",
    "SceneSpec",
    "TrajectorySpec",
    "Wall",
    "WallElement",
    "build_report",
    "compute_metrics",
    "evaluate",
    "evaluation_scene",
    "fuse_stream",
    "generate_scene",
    "generate_stream",
    "krippendorff_alpha",
    "load_default_rubrics",
    "load_ground_truth",
    "load_report",
    "load_scene",
    "match_issues",
    "parse_rubrics",
    "parse_stream",
    "run_audit",
    "save_report",
    "save_scene",
    "select_active",
    "set_issue_status",
]
