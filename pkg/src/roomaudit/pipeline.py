"""End-to-end audit assembly: scene (+ optional detection stream) -> report.

With a stream, detection fusion runs against the full loaded scene geometry
and the fused objects replace any file-borne micro-category objects for
evaluation purposes (in the live system small objects only exist through
detection; keeping both would double-count every switch and rug).  Without
a stream, whatever micro objects the scene file carries are evaluated
as-is.
"""

from __future__ import annotations

import time
from typing import Iterable, Sequence

from .audit import evaluate
from .fusion import DetectionEvent, FusionConfig, fuse_stream
from .report import ScanReport, build_report
from .rubrics import Rubric, select_active
from .scene import MICRO_CATEGORIES, ParametricScene, Provenance


def evaluation_scene(scene: ParametricScene, fused: Sequence) -> ParametricScene:
    """The object set rules actually run over when fusion supplied objects."""
    kept = [
        o
        for o in scene.objects
        if not (o.category in MICRO_CATEGORIES and o.provenance is not Provenance.FUSED_DETECTION)
    ]
    return ParametricScene(
        id=scene.id,
        meta=scene.meta,
        walls=scene.walls,
        elements=scene.elements,
        objects=kept + list(fused),
    )


def run_audit(
    scene: ParametricScene,
    rubrics: Sequence[Rubric],
    communities: Sequence[str] = (),
    exclude: Sequence[str] = (),
    stream: Iterable[DetectionEvent] | None = None,
    fusion_config: FusionConfig | None = None,
    measure_time: bool = False,
) -> ScanReport:
    """Run the complete audit and assemble a report."""
    started = time.perf_counter() if measure_time else None
    active = select_active(rubrics, communities=communities, exclude=exclude)

    fused = []
    diagnostics: dict[str, int] = {}
    target = scene
    if stream is not None:
        fused, diagnostics = fuse_stream(scene, stream, fusion_config)
        target = evaluation_scene(scene, fused)

    issues = evaluate(target, list(active))
    scan_seconds = time.perf_counter() - started if started is not None else None
    return build_report(
        scene=scene,
        issues=issues,
        rubrics=list(rubrics),
        communities=communities,
        excluded_rubrics=exclude,
        fused_objects=fused,
        diagnostics=diagnostics,
        scan_seconds=scan_seconds,
    )
