"""Bundled field-study benchmark fixtures and their summaries.

Two fixture files ship with the package:

``data/benchmark_scans.json``
    Ten homes, three scans each.  Every scan stores integer match counts
    (tp/fp/fn against the expert issue list) plus the originally reported
    rounded scores for regression comparison.

``data/benchmark_issue_counts.json``
    Aggregate counts per issue type across the same study.

Summaries recompute all metrics from the integer counts at full
precision; rounding happens only at presentation time.
"""
from __future__ import annotations

import json
from importlib import resources
from statistics import fmean
from typing import Any

from .evaluation import Metrics

__all__ = [
    "load_benchmark_scans",
    "load_issue_counts",
    "scan_metrics",
    "space_summary",
    "overall_summary",
    "issue_summary",
]


def _load_data_file(name: str) -> dict[str, Any]:
    path = resources.files("roomaudit.data").joinpath(name)
    return json.loads(path.read_text(encoding="utf-8"))


def load_benchmark_scans() -> dict[str, Any]:
    """Return the per-space scan benchmark fixture."""
    return _load_data_file("benchmark_scans.json")


def load_issue_counts() -> dict[str, Any]:
    """Return the per-issue-type count fixture."""
    return _load_data_file("benchmark_issue_counts.json")


def scan_metrics(scan: dict[str, Any]) -> Metrics:
    """Full-precision metrics for one scan entry of the fixture."""
    return Metrics.from_counts(scan["tp"], scan["fp"], scan["fn"])


def space_summary(space: dict[str, Any]) -> dict[str, float]:
    """Mean metrics over one space's scans, computed at full precision.

    The mean is taken over the unrounded per-scan values, matching how
    the reported table was produced; rounding the per-scan values first
    gives visibly different numbers for several spaces.
    """
    per_scan = [scan_metrics(s) for s in space["scans"]]
    return {
        "precision": fmean(m.precision for m in per_scan),
        "recall": fmean(m.recall for m in per_scan),
        "f1": fmean(m.f1 for m in per_scan),
        "accuracy": fmean(m.accuracy for m in per_scan),
    }


def overall_summary(data: dict[str, Any]) -> dict[str, float]:
    """Grand mean over every scan in the fixture, plus alpha and timing."""
    metrics = [scan_metrics(s) for space in data["spaces"] for s in space["scans"]]
    summary = {
        "precision": fmean(m.precision for m in metrics),
        "recall": fmean(m.recall for m in metrics),
        "f1": fmean(m.f1 for m in metrics),
        "accuracy": fmean(m.accuracy for m in metrics),
        "alpha": fmean(space["alpha"] for space in data["spaces"]),
        "scan_time_s": fmean(space["scan_time_s"] for space in data["spaces"]),
    }
    return summary


def issue_summary(row: dict[str, Any]) -> Metrics:
    """Full-precision metrics for one per-issue-type fixture row."""
    return Metrics.from_counts(row["tp"], row["fp"], row["fn"])
