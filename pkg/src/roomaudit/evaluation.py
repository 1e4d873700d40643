"""Scoring audits against ground truth: matching, metrics, and agreement.

A report's issues are matched to ground-truth entries greedily within a
rubric: candidate pairs are considered in order of increasing anchor
distance and a pair is accepted when the distance is within the tolerance
and neither side is already matched.  Counts then turn into
precision/recall/F1 and an accuracy defined as tp / (tp + fp + fn) -- the
Jaccard index of the matched sets, related to F1 (the Dice coefficient) by
``acc = f1 / (2 - f1)``.

Scan-to-scan consistency uses Krippendorff's alpha (nominal data, no
missing cells) over a units-by-raters coding matrix built from several
scans of the same space.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .audit import Issue, IssueStatus
from .units import round_half_up


@dataclass(frozen=True)
class GroundTruthIssue:
    """One annotated issue: what should be found, and where."""

    rubric_id: str
    position: tuple[float, float, float]
    label: str = ""


class GroundTruthError(ValueError):
    """A ground-truth file entry is malformed."""


def load_ground_truth(source: str | Path | list) -> list[GroundTruthIssue]:
    """Load a ground-truth JSON list of {rubric_id, position, label}."""
    if isinstance(source, (str, Path)):
        try:
            doc = json.loads(Path(source).read_text(encoding="utf-8"))
        except OSError as exc:
            raise GroundTruthError(f"cannot read ground truth {source}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise GroundTruthError(f"invalid JSON: {exc}") from exc
    else:
        doc = source
    if not isinstance(doc, list):
        raise GroundTruthError("ground truth must be a JSON list")
    out = []
    for i, raw in enumerate(doc):
        try:
            pos = raw["position"]
            entry = GroundTruthIssue(
                rubric_id=str(raw["rubric_id"]),
                position=(float(pos[0]), float(pos[1]), float(pos[2])),
                label=str(raw.get("label", "")),
            )
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise GroundTruthError(f"entry {i}: malformed ({exc})") from exc
        out.append(entry)
    return out


def save_ground_truth(gt: Sequence[GroundTruthIssue], path: str | Path) -> None:
    doc = [
        {"rubric_id": g.rubric_id, "position": list(g.position), "label": g.label}
        for g in gt
    ]
    Path(path).write_text(
        json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


@dataclass
class MatchResult:
    """Outcome of matching one report against ground truth."""

    tp: int
    fp: int
    fn: int
    pairs: list[tuple[str, int, float]] = field(default_factory=list)  # (issue id, gt index, dist)
    unmatched_issues: list[str] = field(default_factory=list)
    unmatched_gt: list[int] = field(default_factory=list)


def match_issues(
    issues: Sequence[Issue],
    gt: Sequence[GroundTruthIssue],
    tolerance: float = 0.5,
    include_dismissed: bool = False,
) -> MatchResult:
    """Greedily pair issues with ground truth of the same rubric.

    Within each rubric id, candidate pairs are sorted by anchor distance
    (ties broken by issue id, then ground-truth index) and accepted while
    both sides are free and the distance is <= ``tolerance`` meters.
    Dismissed issues are skipped unless ``include_dismissed``.
    """
    if tolerance < 0:
        raise ValueError(f"tolerance must be non-negative, got {tolerance}")
    scored = [
        i for i in issues if include_dismissed or i.status is not IssueStatus.DISMISSED
    ]

    candidates = []
    for issue in scored:
        for gi, entry in enumerate(gt):
            if entry.rubric_id != issue.rubric_id:
                continue
            d = math.dist(tuple(float(v) for v in issue.anchor), entry.position)
            if d <= tolerance:
                candidates.append((d, issue.id, gi))
    candidates.sort()

    matched_issue: set[str] = set()
    matched_gt: set[int] = set()
    pairs = []
    for d, issue_id, gi in candidates:
        if issue_id in matched_issue or gi in matched_gt:
            continue
        matched_issue.add(issue_id)
        matched_gt.add(gi)
        pairs.append((issue_id, gi, d))

    unmatched_issues = [i.id for i in scored if i.id not in matched_issue]
    unmatched_gt = [gi for gi in range(len(gt)) if gi not in matched_gt]
    return MatchResult(
        tp=len(pairs),
        fp=len(unmatched_issues),
        fn=len(unmatched_gt),
        pairs=pairs,
        unmatched_issues=unmatched_issues,
        unmatched_gt=unmatched_gt,
    )


@dataclass(frozen=True)
class Metrics:
    """Counts plus the four derived scores (full precision)."""

    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    accuracy: float

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "Metrics":
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        accuracy = tp / (tp + fp + fn) if tp + fp + fn else 0.0
        return cls(tp=tp, fp=fp, fn=fn, precision=precision, recall=recall, f1=f1, accuracy=accuracy)

    def to_dict(self, ndigits: int | None = None) -> dict:
        doc = {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "accuracy": self.accuracy,
        }
        if ndigits is not None:
            for key in ("precision", "recall", "f1", "accuracy"):
                doc[key] = round_half_up(doc[key], ndigits)
        return doc


def compute_metrics(match: MatchResult | tuple[int, int, int]) -> Metrics:
    """Metrics from a match result or a raw (tp, fp, fn) triple."""
    if isinstance(match, MatchResult):
        return Metrics.from_counts(match.tp, match.fp, match.fn)
    tp, fp, fn = match
    return Metrics.from_counts(tp, fp, fn)


# ---------------------------------------------------------------------------
# Krippendorff's alpha
# ---------------------------------------------------------------------------

@dataclass
class AlphaMatrix:
    """A raters-by-units coding matrix with no missing cells."""

    raters: list[str]
    units: list[str]
    cells: np.ndarray  # shape (raters, units), small non-negative ints

    def __post_init__(self) -> None:
        self.cells = np.asarray(self.cells)
        if self.cells.shape != (len(self.raters), len(self.units)):
            raise ValueError(
                f"cells shape {self.cells.shape} does not match "
                f"{len(self.raters)} raters x {len(self.units)} units"
            )


def krippendorff_alpha(matrix: AlphaMatrix | np.ndarray) -> float:
    """Krippendorff's alpha for nominal data with no missing values.

    Computed from the coincidence matrix: with ``m`` raters every unit
    contributes ``m * (m - 1)`` ordered pairs weighted by ``1 / (m - 1)``;
    observed disagreement is the off-diagonal mass, expected disagreement
    comes from the value marginals.  When every coincidence falls on one
    value there is no variation to disagree about; that degenerate case
    returns 1.0 with a warning.
    """
    cells = matrix.cells if isinstance(matrix, AlphaMatrix) else np.asarray(matrix)
    if cells.ndim != 2:
        raise ValueError("alpha needs a 2-D raters-by-units matrix")
    m, u = cells.shape
    if m < 2:
        raise ValueError(f"alpha needs at least 2 raters, got {m}")
    if u < 1:
        raise ValueError("alpha needs at least 1 unit")

    values = sorted({int(v) for v in cells.ravel()})
    index = {v: k for k, v in enumerate(values)}
    k = len(values)
    coincidence = np.zeros((k, k))
    for unit in range(u):
        column = cells[:, unit]
        for a in range(m):
            for b in range(m):
                if a == b:
                    continue
                coincidence[index[int(column[a])], index[int(column[b])]] += 1.0 / (m - 1)

    n = float(coincidence.sum())
    marginals = coincidence.sum(axis=0)
    observed_disagreement = float(coincidence.sum() - np.trace(coincidence))
    # sum over c != k of n_c * n_k  ==  (sum n_c)^2 - sum n_c^2
    expected_disagreement = float(n * n - marginals @ marginals)

    if expected_disagreement == 0.0:
        warnings.warn(
            "all ratings identical: agreement coefficient is degenerate, returning 1.0",
            stacklevel=2,
        )
        return 1.0
    return 1.0 - (n - 1) * observed_disagreement / expected_disagreement


def build_alpha_matrix(
    scans: Sequence[Sequence[Issue]],
    gt: Sequence[GroundTruthIssue],
    tolerance: float = 0.5,
) -> AlphaMatrix:
    """Code several scans of one space into a binary agreement matrix.

    Units are the ground-truth issues plus every distinct false positive
    (false positives from different scans that share a rubric and sit within
    ``tolerance`` of each other merge into one unit).  Each scan codes a
    unit 1 when it reported a matching issue, else 0.
    """
    if len(scans) < 2:
        raise ValueError(f"consistency needs at least 2 scans, got {len(scans)}")

    unit_ids = [f"gt:{i:04d}" for i in range(len(gt))]
    extra_units: list[tuple[str, str, np.ndarray]] = []  # (unit id, rubric, anchor)
    cells = np.zeros((len(scans), len(gt)), dtype=int)
    extra_cells: list[np.ndarray] = []

    for rater, issues in enumerate(scans):
        result = match_issues(issues, gt, tolerance=tolerance)
        for issue_id, gi, _ in result.pairs:
            cells[rater, gi] = 1
        by_id = {i.id: i for i in issues}
        # unmatched issues become (or join) false-positive units
        for issue_id in result.unmatched_issues:
            issue = by_id[issue_id]
            anchor = np.asarray(issue.anchor, dtype=float)
            best = None
            best_d = math.inf
            for idx, (_, rubric_id, position) in enumerate(extra_units):
                if rubric_id != issue.rubric_id:
                    continue
                if extra_cells[idx][rater]:
                    continue  # this scan already claimed that unit
                d = float(np.linalg.norm(anchor - position))
                if d <= tolerance and d < best_d:
                    best, best_d = idx, d
            if best is None:
                extra_units.append(
                    (f"xp:{len(extra_units):04d}", issue.rubric_id, anchor)
                )
                column = np.zeros(len(scans), dtype=int)
                column[rater] = 1
                extra_cells.append(column)
            else:
                extra_cells[best][rater] = 1

    if extra_cells:
        cells = np.hstack([cells, np.stack(extra_cells, axis=1)])
        unit_ids = unit_ids + [u[0] for u in extra_units]
    return AlphaMatrix(
        raters=[f"scan{r + 1}" for r in range(len(scans))],
        units=unit_ids,
        cells=cells,
    )


def summarize_space(
    scan_metrics: Sequence[Metrics],
    alpha: float | None = None,
) -> dict:
    """Average several scans' metrics at full precision (rounding is for
    presentation only, never for aggregation)."""
    if not scan_metrics:
        raise ValueError("no scans to summarize")
    doc = {
        "scans": len(scan_metrics),
        "precision": sum(m.precision for m in scan_metrics) / len(scan_metrics),
        "recall": sum(m.recall for m in scan_metrics) / len(scan_metrics),
        "f1": sum(m.f1 for m in scan_metrics) / len(scan_metrics),
        "accuracy": sum(m.accuracy for m in scan_metrics) / len(scan_metrics),
    }
    if alpha is not None:
        doc["alpha"] = alpha
    return doc
