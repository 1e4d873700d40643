"""Shared fixtures and the acceptance-criteria summary hook.

Tests marked ``@pytest.mark.criterion(n, "name")`` are collected into a
per-criterion verdict printed at the end of the run, one line per criterion,
so the acceptance status is readable without scrolling the full log.
"""

from pathlib import Path

import numpy as np
import pytest

from roomaudit.scene import ParametricScene, Provenance, SceneObject, Wall, WallElement

FIXTURES = Path(__file__).parent / "fixtures"

_CRITERIA: dict[int, str] = {}
_VERDICTS: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(n, name): part of acceptance criterion n"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, name = marker.args
    _CRITERIA[number] = name
    _VERDICTS.setdefault(number, []).append(report.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        results = _VERDICTS[number]
        verdict = "PASS" if all(results) else "FAIL"
        failed = len([r for r in results if not r])
        detail = f" ({failed}/{len(results)} checks failed)" if failed else ""
        terminalreporter.write_line(
            f"criterion {number} ({_CRITERIA[number]}): {verdict}{detail}"
        )


# ---------------------------------------------------------------------------
# scene-building helpers
# ---------------------------------------------------------------------------


def box(
    object_id: str,
    category: str,
    center,
    half_extents,
    yaw: float = 0.0,
    provenance: Provenance = Provenance.RECONSTRUCTION,
    confidence: float | None = None,
) -> SceneObject:
    return SceneObject(
        id=object_id,
        category=category,
        center=np.asarray(center, dtype=float),
        half_extents=np.asarray(half_extents, dtype=float),
        yaw=yaw,
        provenance=provenance,
        confidence=confidence,
    )


def room(
    objects=(),
    elements=(),
    size=(4.0, 3.0),
    height: float = 2.5,
    scene_id: str = "test-room",
) -> ParametricScene:
    """A single rectangular room with walls w0..w3 (w0 runs along +x)."""
    sx, sy = size
    corners = [(0.0, 0.0), (sx, 0.0), (sx, sy), (0.0, sy)]
    walls = [
        Wall(
            id=f"w{i}",
            start=np.array(corners[i], dtype=float),
            end=np.array(corners[(i + 1) % 4], dtype=float),
            height=height,
        )
        for i in range(4)
    ]
    return ParametricScene(
        id=scene_id,
        walls=walls,
        elements=list(elements),
        objects=list(objects),
    )


def door(element_id: str = "d0", wall_id: str = "w0", offset: float = 1.0,
         width: float = 0.9, height: float = 2.0) -> WallElement:
    return WallElement(
        id=element_id, kind="door", wall_id=wall_id,
        offset=offset, width=width, sill=0.0, height=height,
    )


@pytest.fixture(scope="session")
def golden_scene_path() -> Path:
    return FIXTURES / "golden20_scene.json"


@pytest.fixture(scope="session")
def golden_gt_path() -> Path:
    return FIXTURES / "golden20_gt.json"


@pytest.fixture(scope="session")
def mini_scene_path() -> Path:
    return FIXTURES / "mini_scene.json"


@pytest.fixture(scope="session")
def mini_gt_path() -> Path:
    return FIXTURES / "mini_gt.json"
