import json
import os
import subprocess
import sys

import pytest
from fastapi.testclient import TestClient

from roomaudit.cli import main
from roomaudit.report import load_report
from roomaudit.service import ReportLockError, acquire_lock, create_app


@pytest.fixture()
def report_path(golden_scene_path, tmp_path):
    path = tmp_path / "report.json"
    assert main(["audit", str(golden_scene_path), "--out", str(path)]) == 0
    return path


@pytest.fixture()
def client(report_path):
    with TestClient(create_app(report_path)) as c:
        yield c


# ---------------------------------------------------------------------------
# reads
# ---------------------------------------------------------------------------


def test_get_report(client):
    doc = client.get("/api/report").json()
    assert doc["schema"] == 1
    assert doc["summary"]["total"] == 20
    assert len(doc["issues"]) == 20


def test_get_scene(client):
    doc = client.get("/api/scene").json()
    assert doc["id"] == "golden-20"
    assert len(doc["walls"]) >= 4
    assert {"id", "walls", "elements", "objects", "meta"} <= set(doc)


def test_get_rubrics(client):
    doc = client.get("/api/rubrics").json()
    assert len(doc) == 20
    assert doc["counter.dim_height"]["comparison"] == {"op": "Between", "values": [28.0, 34.0]}


def test_get_summary(client):
    doc = client.get("/api/summary").json()
    assert doc == {
        "total": 20,
        "by_category": {
            "LackOfAssistiveItem": 3,
            "ObjectDimension": 5,
            "ObjectPosition": 8,
            "RiskyItem": 4,
        },
        "by_status": {"active": 20},
    }


def test_issues_carry_rubric_details_for_the_detail_panel(client):
    issues = client.get("/api/issues").json()
    assert len(issues) == 20
    for issue in issues:
        assert set(issue["rubric"]) == {
            "name", "communities", "note", "description", "suggestions", "sources",
        }
    measured = [i for i in issues if i["measured"] is not None]
    assert measured
    assert {"value", "unit", "cm", "meters"} == set(measured[0]["measured"])


# ---------------------------------------------------------------------------
# mutations
# ---------------------------------------------------------------------------


def test_confirm_persists_before_the_response(client, report_path):
    response = client.post("/api/issues/i0001/confirm")
    assert response.status_code == 200
    assert response.json()["status"] == "confirmed"
    # the acknowledged change is already on disk
    on_disk = json.loads(report_path.read_text())
    statuses = {i["id"]: i["status"] for i in on_disk["issues"]}
    assert statuses["i0001"] == "confirmed"


def test_dismiss_survives_a_restart(report_path):
    with TestClient(create_app(report_path)) as client:
        assert client.post("/api/issues/i0002/dismiss").status_code == 200
    # a fresh service over the same file sees the decision
    with TestClient(create_app(report_path)) as client:
        issues = {i["id"]: i["status"] for i in client.get("/api/issues").json()}
        assert issues["i0002"] == "dismissed"
    assert load_report(report_path).issue("i0002").status.value == "dismissed"


def test_conflicting_transition_returns_409_and_changes_nothing(client, report_path):
    assert client.post("/api/issues/i0003/dismiss").status_code == 200
    response = client.post("/api/issues/i0003/confirm")
    assert response.status_code == 409
    assert "dismissed" in response.json()["detail"]
    statuses = {i["id"]: i["status"] for i in json.loads(report_path.read_text())["issues"]}
    assert statuses["i0003"] == "dismissed"


def test_repeating_a_decision_is_idempotent(client):
    assert client.post("/api/issues/i0004/confirm").status_code == 200
    assert client.post("/api/issues/i0004/confirm").status_code == 200


def test_unknown_issue_is_404(client):
    response = client.post("/api/issues/i9999/confirm")
    assert response.status_code == 404
    assert "i9999" in response.json()["detail"]


def test_summary_reflects_decisions(client):
    client.post("/api/issues/i0001/confirm")
    client.post("/api/issues/i0002/dismiss")
    doc = client.get("/api/summary").json()
    assert doc["by_status"] == {"active": 18, "confirmed": 1, "dismissed": 1}


# ---------------------------------------------------------------------------
# locking
# ---------------------------------------------------------------------------


def test_live_lock_refuses_a_second_server(report_path):
    lock = report_path.with_name(report_path.name + ".lock")
    # a live foreign process holds the lock
    other = subprocess.Popen([sys.executable, "-c", "import time; time.sleep(30)"])
    try:
        lock.write_text(str(other.pid))
        with pytest.raises(ReportLockError, match="already served"):
            with TestClient(create_app(report_path)):
                pass
    finally:
        other.kill()
        other.wait()
        lock.unlink(missing_ok=True)


def test_stale_lock_from_a_dead_process_is_stolen(report_path):
    lock = report_path.with_name(report_path.name + ".lock")
    dead = subprocess.Popen([sys.executable, "-c", "pass"])
    dead.wait()
    lock.write_text(str(dead.pid))
    with TestClient(create_app(report_path)) as client:
        assert client.get("/api/summary").status_code == 200
        assert lock.read_text() == str(os.getpid())
    assert not lock.exists()  # released on shutdown


def test_lock_is_held_while_serving_and_released_after(report_path):
    lock = report_path.with_name(report_path.name + ".lock")
    with TestClient(create_app(report_path)):
        assert lock.exists()
        assert int(lock.read_text()) == os.getpid()
    assert not lock.exists()


def test_acquire_lock_direct(tmp_path):
    target = tmp_path / "r.json"
    target.write_text("{}")
    lock = acquire_lock(target)
    assert lock.read_text() == str(os.getpid())
    lock.unlink()


# ---------------------------------------------------------------------------
# static UI hosting
# ---------------------------------------------------------------------------


def test_ui_dir_is_mounted(report_path, tmp_path):
    ui = tmp_path / "ui"
    ui.mkdir()
    (ui / "index.html").write_text("<!doctype html><title>review</title>")
    with TestClient(create_app(report_path, ui_dir=ui)) as client:
        response = client.get("/")
        assert response.status_code == 200
        assert "review" in response.text
        # the API still wins over the static mount
        assert client.get("/api/summary").status_code == 200


def test_without_ui_dir_root_is_404(client):
    assert client.get("/").status_code == 404
