"""HTTP/JSON service over one report file.

The review UI drives confirm/dismiss decisions through this API; nothing
else touches the report while it is being served.  Guarantees:

- a ``<report>.lock`` pidfile serializes writers: a second server on the
  same report refuses to start while the first is alive
- every acknowledged mutation is flushed to the report file *before* the
  HTTP 200 goes out, so an acknowledged change survives any crash after it
- illegal status transitions (e.g. confirm on a dismissed issue) return
  409 and change nothing

Readers are unrestricted; mutations serialize through one in-process lock
with read-your-writes consistency.
"""
from __future__ import annotations

import os
import threading
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from .audit import IssueStatus, IssueTransitionError
from .report import ScanReport, issue_to_dict, load_report, report_to_dict, save_report
from .scene import scene_to_dict


class ReportLockError(RuntimeError):
    """Another live process is already serving this report."""


def _lock_path(report_path: Path) -> Path:
    return report_path.with_name(report_path.name + ".lock")


def _pid_alive(pid: int) -> bool:
    try:
        os.kill(pid, 0)
    except ProcessLookupError:
        return False
    except PermissionError:
        return True
    return True


def acquire_lock(report_path: Path) -> Path:
    """Create the pidfile, stealing it only from dead processes."""
    lock = _lock_path(report_path)
    while True:
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            try:
                holder = int(lock.read_text().strip() or "0")
            except (OSError, ValueError):
                holder = 0
            if holder and holder != os.getpid() and _pid_alive(holder):
                raise ReportLockError(
                    f"{report_path} is already served by pid {holder} ({lock})"
                ) from None
            lock.unlink(missing_ok=True)  # stale lock from a dead process
            continue
        with os.fdopen(fd, "w") as fh:
            fh.write(str(os.getpid()))
        return lock


def _issue_payload(report: ScanReport, issue) -> dict:
    doc = issue_to_dict(issue)
    rubric = report.rubrics.get(issue.rubric_id, {})
    doc["rubric"] = {
        "name": rubric.get("name", ""),
        "communities": rubric.get("communities", []),
        "note": rubric.get("note"),
        "description": rubric.get("description"),
        "suggestions": rubric.get("suggestions", []),
        "sources": rubric.get("sources", []),
    }
    return doc


def create_app(report_path: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    """Build the service for one report file."""
    report_path = Path(report_path)
    report = load_report(report_path)
    writer = threading.Lock()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        lock = acquire_lock(report_path)
        try:
            yield
        finally:
            lock.unlink(missing_ok=True)

    app = FastAPI(title="room-audit review service", lifespan=lifespan)
    app.state.report = report
    app.state.report_path = report_path

    @app.get("/api/report")
    def get_report() -> dict:
        return report_to_dict(report)

    @app.get("/api/scene")
    def get_scene() -> dict:
        return scene_to_dict(report.scene)

    @app.get("/api/rubrics")
    def get_rubrics() -> dict:
        return report.rubrics

    @app.get("/api/summary")
    def get_summary() -> dict:
        return report.summary()

    @app.get("/api/issues")
    def get_issues() -> list[dict]:
        return [_issue_payload(report, issue) for issue in report.issues]

    def _mutate(issue_id: str, status: IssueStatus) -> dict:
        with writer:
            try:
                issue = report.set_status(issue_id, status)
            except KeyError:
                raise HTTPException(status_code=404, detail=f"no issue {issue_id!r}") from None
            except IssueTransitionError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from None
            # write-ahead: the change hits disk before the 200 goes out
            save_report(report, report_path)
        return _issue_payload(report, issue)

    @app.post("/api/issues/{issue_id}/confirm")
    def confirm_issue(issue_id: str) -> dict:
        return _mutate(issue_id, IssueStatus.CONFIRMED)

    @app.post("/api/issues/{issue_id}/dismiss")
    def dismiss_issue(issue_id: str) -> dict:
        return _mutate(issue_id, IssueStatus.DISMISSED)

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
