import hashlib
import json

import pytest

from roomaudit.audit import IssueStatus, evaluate
from roomaudit.pipeline import run_audit
from roomaudit.report import (
    ReportError,
    build_report,
    load_report,
    report_from_dict,
    report_to_dict,
    rubric_fingerprint,
    save_report,
    serialize_report,
)
from roomaudit.rubrics import load_default_rubrics
from roomaudit.scene import load_scene

RUBRICS = load_default_rubrics()


@pytest.fixture()
def golden_report(golden_scene_path):
    scene = load_scene(golden_scene_path)
    return run_audit(scene, RUBRICS)


def test_report_id_is_a_hash_of_scene_and_configuration(golden_scene_path):
    scene = load_scene(golden_scene_path)
    report = build_report(scene, [], RUBRICS)
    assert len(report.report_id) == 12
    assert set(report.report_id) <= set("0123456789abcdef")
    # identical inputs hash identically; configuration changes the id
    assert build_report(scene, [], RUBRICS).report_id == report.report_id
    assert build_report(scene, [], RUBRICS, communities=["Elder"]).report_id != report.report_id
    assert (
        build_report(scene, [], RUBRICS, excluded_rubrics=["knob.pos_height"]).report_id
        != report.report_id
    )


def test_rubric_fingerprint_is_order_independent():
    forward = rubric_fingerprint(RUBRICS)
    assert rubric_fingerprint(list(reversed(RUBRICS))) == forward
    assert rubric_fingerprint(RUBRICS[:5]) != forward
    assert len(forward) == 12
    int(forward, 16)  # hex


def test_serialization_is_byte_stable(golden_report):
    text = serialize_report(golden_report)
    assert serialize_report(report_from_dict(json.loads(text))) == text
    assert text.endswith("\n")


def test_no_wall_clock_by_default(golden_report):
    doc = report_to_dict(golden_report)
    assert doc["timings"] == {"scan_seconds": None}
    text = serialize_report(golden_report)
    import time

    time.sleep(0.01)
    assert serialize_report(golden_report) == text


def test_measured_block_carries_all_three_units(golden_report):
    doc = report_to_dict(golden_report)
    measured = [i["measured"] for i in doc["issues"] if i["measured"] is not None]
    assert measured, "expected at least one measured issue"
    for block in measured:
        assert set(block) == {"value", "unit", "cm", "meters"}
        assert block["unit"] == "in"
        assert block["cm"] == pytest.approx(block["value"] * 2.54, abs=1e-12)
        assert block["meters"] == pytest.approx(block["value"] * 0.0254, abs=1e-12)
    existence = [i for i in doc["issues"] if i["category"] in ("RiskyItem", "LackOfAssistiveItem")]
    assert all(i["measured"] is None for i in existence)


def test_summary_counts(golden_report):
    summary = golden_report.summary()
    assert summary["total"] == 20
    assert summary["by_category"] == {
        "ObjectDimension": 5,
        "ObjectPosition": 8,
        "RiskyItem": 4,
        "LackOfAssistiveItem": 3,
    }
    assert summary["by_status"] == {"active": 20}

    golden_report.set_status("i0001", IssueStatus.CONFIRMED)
    assert golden_report.summary()["by_status"] == {"active": 19, "confirmed": 1}


def test_issue_lookup(golden_report):
    assert golden_report.issue("i0001").id == "i0001"
    with pytest.raises(KeyError):
        golden_report.issue("i9999")


def test_save_and_load_round_trip(golden_report, tmp_path):
    path = tmp_path / "report.json"
    save_report(golden_report, path)
    loaded = load_report(path)
    assert serialize_report(loaded) == serialize_report(golden_report)
    assert loaded.report_id == golden_report.report_id
    assert [i.id for i in loaded.issues] == [i.id for i in golden_report.issues]
    assert not path.with_name("report.json.tmp").exists()


def test_review_status_survives_the_file(golden_report, tmp_path):
    golden_report.set_status("i0002", IssueStatus.DISMISSED)
    path = tmp_path / "report.json"
    save_report(golden_report, path)
    assert load_report(path).issue("i0002").status is IssueStatus.DISMISSED


def test_fused_objects_round_trip(mini_scene_path, tmp_path):
    from roomaudit.simulate import TrajectorySpec, generate_stream

    scene = load_scene(mini_scene_path)
    report = run_audit(scene, RUBRICS, stream=generate_stream(scene, TrajectorySpec(seed=0)))
    assert report.fused_objects
    assert report.diagnostics["events"] > 0
    path = tmp_path / "report.json"
    save_report(report, path)
    loaded = load_report(path)
    assert [o.id for o in loaded.fused_objects] == [o.id for o in report.fused_objects]
    assert loaded.fused_objects[0].confidence == report.fused_objects[0].confidence
    assert loaded.diagnostics == report.diagnostics


def test_scan_seconds_only_when_asked(golden_scene_path):
    scene = load_scene(golden_scene_path)
    untimed = run_audit(scene, RUBRICS)
    assert untimed.scan_seconds is None
    timed = run_audit(scene, RUBRICS, measure_time=True)
    assert timed.scan_seconds is not None and timed.scan_seconds > 0


def test_report_errors(tmp_path):
    with pytest.raises(ReportError, match="cannot read report"):
        load_report(tmp_path / "absent.json")

    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    with pytest.raises(ReportError, match="invalid JSON"):
        load_report(bad)

    with pytest.raises(ReportError, match="unsupported report schema"):
        report_from_dict({"schema": 99})
    with pytest.raises(ReportError, match="must be a JSON object"):
        report_from_dict([1, 2])


def test_report_id_follows_the_documented_recipe(golden_scene_path):
    # independent recomputation of the id
    from roomaudit.scene import scene_to_dict

    scene = load_scene(golden_scene_path)
    report = build_report(scene, [], RUBRICS, communities=["Elder"])
    key = json.dumps(
        {
            "scene": scene_to_dict(scene),
            "rubrics": rubric_fingerprint(RUBRICS),
            "communities": ["Elder"],
            "excluded": [],
        },
        sort_keys=True,
    )
    assert report.report_id == hashlib.sha256(key.encode("utf-8")).hexdigest()[:12]
