"""Command-line interface: ``room-audit <command>``.

Commands cover the full pipeline headless:

- ``validate-rubrics``  parse a rubric file and report diagnostics
- ``audit``             scene (+ optional detection stream) -> issue report
- ``evaluate``          score a report against annotated ground truth
- ``consistency``       inter-scan agreement across repeated reports
- ``simulate``          generate a synthetic scene, ground truth, and stream
- ``serve``             expose a report over HTTP for the review UI

Every command takes ``--format json|text``.  Outputs are reproducible:
identical inputs and flags give byte-identical files (reports carry no
wall-clock timestamps unless ``--timestamps`` is passed to ``audit``).

Exit codes: 0 success, 1 validation failure, 2 I/O error, 3 internal
invariant breach.  (Malformed command lines exit 2 via argparse, the
usual Unix convention.)
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .benchmark import (
    load_benchmark_scans,
    overall_summary,
    scan_metrics,
    space_summary,
)
from .evaluation import (
    Metrics,
    build_alpha_matrix,
    compute_metrics,
    krippendorff_alpha,
    load_ground_truth,
    match_issues,
    save_ground_truth,
)
from .fusion import parse_stream, serialize_stream
from .pipeline import run_audit
from .report import load_report, save_report, serialize_report
from .rubrics import load_default_rubrics, parse_rubrics
from .scene import load_scene, save_scene
from .simulate import (
    DEFAULT_NOISE,
    NoiseSpec,
    SceneSpec,
    TrajectorySpec,
    generate_scene,
    generate_stream,
)
from .units import round_half_up

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INTERNAL = 3


def _emit(payload: dict, fmt: str, text: Callable[[dict], str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text(payload))


def _metrics_payload(metrics: Metrics) -> dict:
    doc = metrics.to_dict()
    doc["rounded"] = {
        k: v for k, v in metrics.to_dict(ndigits=2).items() if k not in ("tp", "fp", "fn")
    }
    return doc


def _metrics_text(doc: dict) -> str:
    r = doc["rounded"]
    lines = [
        f"tp {doc['tp']}  fp {doc['fp']}  fn {doc['fn']}",
        f"precision {r['precision']:.2f}",
        f"recall    {r['recall']:.2f}",
        f"f1        {r['f1']:.2f}",
        f"accuracy  {r['accuracy']:.2f}",
    ]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# validate-rubrics
# ---------------------------------------------------------------------------

def cmd_validate_rubrics(args: argparse.Namespace) -> int:
    rubrics = parse_rubrics(Path(args.path))
    if not rubrics:
        print("warning: rubric file defines no rubrics", file=sys.stderr)
    payload = {
        "ok": True,
        "count": len(rubrics),
        "ids": [r.id for r in rubrics],
    }
    _emit(
        payload,
        args.format,
        lambda doc: f"{doc['count']} rubrics OK" if doc["count"] else "0 rubrics",
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------

def cmd_audit(args: argparse.Namespace) -> int:
    scene = load_scene(Path(args.scene))
    rubrics = parse_rubrics(Path(args.rubrics)) if args.rubrics else load_default_rubrics()
    stream = parse_stream(Path(args.stream)) if args.stream else None
    report = run_audit(
        scene,
        rubrics,
        communities=args.community or (),
        exclude=args.exclude_rubric or (),
        stream=stream,
        measure_time=args.timestamps,
    )
    if args.out:
        save_report(report, Path(args.out))

    summary = report.summary()
    payload: dict[str, Any] = {
        "report_id": report.report_id,
        "issues": summary["total"],
        "by_category": summary["by_category"],
        "out": args.out,
    }
    if args.out is None and args.format == "json":
        # no file requested: the report document itself is the output
        print(serialize_report(report), end="")
        return EXIT_OK

    def text(doc: dict) -> str:
        lines = [f"report {doc['report_id']}: {doc['issues']} issues"]
        for category, n in sorted(doc["by_category"].items()):
            lines.append(f"  {category:<22} {n}")
        if doc["out"]:
            lines.append(f"written {doc['out']}")
        return "\n".join(lines)

    _emit(payload, args.format, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------

def cmd_evaluate(args: argparse.Namespace) -> int:
    report = load_report(Path(args.report))
    gt = load_ground_truth(Path(args.gt))
    match = match_issues(
        report.issues,
        gt,
        tolerance=args.tolerance,
        include_dismissed=args.include_dismissed,
    )
    payload = _metrics_payload(compute_metrics(match))
    payload["tolerance_m"] = args.tolerance
    _emit(payload, args.format, _metrics_text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# consistency
# ---------------------------------------------------------------------------

def _fixture_summary(fmt: str) -> int:
    data = load_benchmark_scans()
    spaces = []
    for space in data["spaces"]:
        mean = space_summary(space)
        spaces.append(
            {
                "id": space["id"],
                "gt_issues": space["gt_issues"],
                "alpha": space["alpha"],
                "scan_time_s": space["scan_time_s"],
                "mean": mean,
            }
        )
    payload = {"spaces": spaces, "overall": overall_summary(data)}

    def text(doc: dict) -> str:
        lines = [f"{'space':<6} {'prec':>5} {'rec':>5} {'f1':>5} {'acc':>5} {'alpha':>6} {'time':>6}"]
        for row in doc["spaces"]:
            m = row["mean"]
            lines.append(
                f"{row['id']:<6} "
                f"{round_half_up(m['precision']):>5.2f} {round_half_up(m['recall']):>5.2f} "
                f"{round_half_up(m['f1']):>5.2f} {round_half_up(m['accuracy']):>5.2f} "
                f"{row['alpha']:>6.2f} {row['scan_time_s']:>6.0f}"
            )
        o = doc["overall"]
        lines.append(
            f"{'mean':<6} "
            f"{round_half_up(o['precision']):>5.2f} {round_half_up(o['recall']):>5.2f} "
            f"{round_half_up(o['f1']):>5.2f} {round_half_up(o['accuracy']):>5.2f} "
            f"{o['alpha']:>6.2f} {o['scan_time_s']:>6.1f}"
        )
        return "\n".join(lines)

    _emit(payload, fmt, text)
    return EXIT_OK


def cmd_consistency(args: argparse.Namespace) -> int:
    if args.fixture:
        if args.reports:
            raise ValueError("--fixture takes no report arguments")
        return _fixture_summary(args.format)
    if len(args.reports) < 2:
        raise ValueError("consistency needs at least two report files (or --fixture)")
    if not args.gt:
        raise ValueError("--gt is required when scoring reports")
    if len(args.reports) == 2:
        print("warning: only two scans; agreement is computed over 2 raters", file=sys.stderr)

    gt = load_ground_truth(Path(args.gt))
    scans = [load_report(Path(p)).issues for p in args.reports]
    per_scan = [
        compute_metrics(match_issues(issues, gt, tolerance=args.tolerance))
        for issues in scans
    ]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # degenerate all-identical matrices are fine here
        alpha = krippendorff_alpha(build_alpha_matrix(scans, gt, tolerance=args.tolerance))

    mean = {
        "precision": sum(m.precision for m in per_scan) / len(per_scan),
        "recall": sum(m.recall for m in per_scan) / len(per_scan),
        "f1": sum(m.f1 for m in per_scan) / len(per_scan),
        "accuracy": sum(m.accuracy for m in per_scan) / len(per_scan),
    }
    payload = {
        "alpha": alpha,
        "scans": [_metrics_payload(m) for m in per_scan],
        "mean": mean,
        "tolerance_m": args.tolerance,
    }

    def text(doc: dict) -> str:
        lines = []
        for i, scan in enumerate(doc["scans"], start=1):
            r = scan["rounded"]
            lines.append(
                f"scan{i}: P {r['precision']:.2f}  R {r['recall']:.2f}  "
                f"F1 {r['f1']:.2f}  Acc {r['accuracy']:.2f}"
            )
        m = doc["mean"]
        lines.append(
            f"mean : P {round_half_up(m['precision']):.2f}  R {round_half_up(m['recall']):.2f}  "
            f"F1 {round_half_up(m['f1']):.2f}  Acc {round_half_up(m['accuracy']):.2f}"
        )
        lines.append(f"alpha: {doc['alpha']:.4f}")
        return "\n".join(lines)

    _emit(payload, args.format, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def _parse_plant(tokens: Sequence[str]) -> dict[str, int]:
    planted: dict[str, int] = {}
    for token in tokens:
        name, _, count = token.partition("=")
        name = name.strip().lower()
        if not name:
            raise ValueError(f"bad --plant value {token!r}")
        if count:
            try:
                n = int(count)
            except ValueError:
                raise ValueError(f"bad --plant count in {token!r}") from None
        else:
            n = 1
        if n < 0:
            raise ValueError(f"bad --plant count in {token!r}")
        planted[name] = planted.get(name, 0) + n
    return planted


def cmd_simulate(args: argparse.Namespace) -> int:
    noise = NoiseSpec(0.0, 0.0, 0.0) if args.noiseless else NoiseSpec(
        pixel_sigma=args.pixel_sigma,
        miss_rate=args.miss_rate,
        false_positive_rate=args.false_positive_rate,
    )
    spec = SceneSpec(
        seed=args.seed,
        rooms=args.rooms,
        size_sqm=args.size,
        planted=_parse_plant(args.plant or []),
        clutter=args.clutter,
        home_type=args.home_type,
        id=args.scene_id,
    )
    traj = TrajectorySpec(seed=args.traj_seed, noise=noise)

    scene, gt = generate_scene(spec)
    stream = generate_stream(scene, traj)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    scene_path = out_dir / "scene.json"
    gt_path = out_dir / "ground_truth.json"
    stream_path = out_dir / "stream.jsonl"
    save_scene(scene, scene_path)
    save_ground_truth(gt, gt_path)
    stream_path.write_text(serialize_stream(stream), encoding="utf-8")

    payload = {
        "scene": str(scene_path),
        "ground_truth": str(gt_path),
        "stream": str(stream_path),
        "objects": len(scene.objects),
        "gt_issues": len(gt),
        "detections": len(stream),
    }
    _emit(
        payload,
        args.format,
        lambda doc: "\n".join(
            [
                f"scene        {doc['scene']}  ({doc['objects']} objects)",
                f"ground truth {doc['ground_truth']}  ({doc['gt_issues']} issues)",
                f"stream       {doc['stream']}  ({doc['detections']} detections)",
            ]
        ),
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------

def cmd_serve(args: argparse.Namespace) -> int:
    # imported lazily so the pipeline commands work without the service stack
    import uvicorn

    from .service import create_app

    app = create_app(Path(args.report), ui_dir=Path(args.ui_dir) if args.ui_dir else None)
    print(f"serving {args.report} on http://{args.host}:{args.port}", file=sys.stderr)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        choices=("json", "text"),
        default="text",
        help="output format (default: text)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="room-audit",
        description="Audit indoor scenes for accessibility and safety issues.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-rubrics", help="parse a rubric file and report diagnostics")
    p.add_argument("path", help="rubric JSON file")
    _add_format(p)
    p.set_defaults(func=cmd_validate_rubrics)

    p = sub.add_parser("audit", help="evaluate a scene (optionally with a detection stream)")
    p.add_argument("scene", help="scene JSON file")
    p.add_argument("--stream", help="detection stream JSONL to fuse before evaluating")
    p.add_argument("--rubrics", help="rubric JSON file (default: bundled rubrics)")
    p.add_argument(
        "--community",
        action="append",
        metavar="NAME",
        help="restrict to rubrics tagged for this community (repeatable)",
    )
    p.add_argument(
        "--exclude-rubric",
        action="append",
        metavar="ID",
        help="drop one rubric by id, e.g. knob.pos_height (repeatable)",
    )
    p.add_argument("--out", help="write the report here (atomic)")
    p.add_argument(
        "--timestamps",
        action="store_true",
        help="record wall-clock scan duration in the report (breaks reproducibility)",
    )
    _add_format(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("evaluate", help="score a report against ground truth")
    p.add_argument("report", help="report JSON file")
    p.add_argument("gt", help="ground-truth JSON file")
    p.add_argument("--tolerance", type=float, default=0.5, help="match radius in meters (default 0.5)")
    p.add_argument(
        "--include-dismissed",
        action="store_true",
        help="score dismissed issues too (default: skip them)",
    )
    _add_format(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("consistency", help="agreement across repeated scans of one space")
    p.add_argument("reports", nargs="*", help="two or more report JSON files")
    p.add_argument("--gt", help="ground-truth JSON file")
    p.add_argument("--tolerance", type=float, default=0.5, help="match radius in meters (default 0.5)")
    p.add_argument(
        "--fixture",
        action="store_true",
        help="summarize the bundled field-study fixture instead of report files",
    )
    _add_format(p)
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("simulate", help="generate a synthetic scene, ground truth, and stream")
    p.add_argument("--seed", type=int, default=0, help="scene RNG seed (default 0)")
    p.add_argument("--traj-seed", type=int, default=0, help="trajectory/detector RNG seed (default 0)")
    p.add_argument("--rooms", type=int, default=3, help="room count (default 3)")
    p.add_argument("--size", type=float, default=65.0, help="floor area in square meters (default 65)")
    p.add_argument(
        "--home-type",
        choices=("apartment", "house"),
        default="apartment",
        help="metadata only (default: apartment)",
    )
    p.add_argument(
        "--plant",
        action="append",
        metavar="RUBRIC[=N]",
        help="plant N violations of a rubric id, e.g. --plant bed.dim_height=2 (repeatable)",
    )
    p.add_argument("--clutter", type=int, default=6, help="compliant filler objects (default 6)")
    p.add_argument("--scene-id", help="override the generated scene id")
    p.add_argument("--pixel-sigma", type=float, default=DEFAULT_NOISE.pixel_sigma,
                   help=f"detection center jitter in pixels (default {DEFAULT_NOISE.pixel_sigma})")
    p.add_argument("--miss-rate", type=float, default=DEFAULT_NOISE.miss_rate,
                   help=f"per-frame missed-detection probability (default {DEFAULT_NOISE.miss_rate})")
    p.add_argument("--false-positive-rate", type=float, default=DEFAULT_NOISE.false_positive_rate,
                   help=f"per-frame spurious detection probability (default {DEFAULT_NOISE.false_positive_rate})")
    p.add_argument("--noiseless", action="store_true", help="zero all noise channels")
    p.add_argument("--out-dir", default=".", help="directory for the three output files (default: .)")
    _add_format(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve", help="expose a report over HTTP for the review UI")
    p.add_argument("report", help="report JSON file")
    p.add_argument("--host", default="127.0.0.1", help="bind address (default 127.0.0.1)")
    p.add_argument("--port", type=int, default=8000, help="port (default 8000)")
    p.add_argument("--ui-dir", help="directory of static UI assets to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError) as exc:
        # covers scene/rubric/stream/report parse errors, bad arguments,
        # unknown ids -- everything that means "your input is wrong".  The
        # loaders wrap unreadable files in their parse-error types with the
        # OSError chained, so file-system trouble still exits as I/O.
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        if isinstance(exc.__cause__, OSError):
            return EXIT_IO
        return EXIT_VALIDATION
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
