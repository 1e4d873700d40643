"""
The whole pipeline, scored: simulate, fuse, audit, evaluate
===========================================================

This script runs the full loop on the bundled golden scene (20 planted
violations, one per rubric): generate a detection stream, fuse it, run the
rules, and score the result against ground truth.  Then it degrades the
detector on purpose and watches recall fall, and finally scores scan-to-
scan consistency the way the benchmark does, with Krippendorff's alpha.
"""

from pathlib import Path

import numpy as np

from roomaudit.audit import evaluate
from roomaudit.evaluation import (
    build_alpha_matrix,
    compute_metrics,
    krippendorff_alpha,
    load_ground_truth,
    match_issues,
    summarize_space,
)
from roomaudit.fusion import fuse_stream
from roomaudit.pipeline import evaluation_scene
from roomaudit.rubrics import default_rubrics_path, parse_rubrics
from roomaudit.scene import load_scene
from roomaudit.simulate import NoiseSpec, TrajectorySpec, generate_stream

FIXTURES = Path(__file__).parent.parent / "tests" / "fixtures"

rubrics = parse_rubrics(default_rubrics_path())
scene = load_scene(FIXTURES / "golden20_scene.json")
gt = load_ground_truth(FIXTURES / "golden20_gt.json")
print(f"golden scene: {len(scene.objects)} objects, {len(gt)} planted violations")


def run_scan(noise: NoiseSpec, seed: int = 0):
    stream = generate_stream(scene, TrajectorySpec(seed=seed, noise=noise))
    fused, _ = fuse_stream(scene, stream)
    return evaluate(evaluation_scene(scene, fused), rubrics)


# ---------------------------------------------------------------------------
# a perfect detector recovers the ground truth exactly
# ---------------------------------------------------------------------------

issues = run_scan(NoiseSpec())
metrics = compute_metrics(match_issues(issues, gt))
print(f"\nnoiseless scan: {len(issues)} issues, "
      f"P={metrics.precision:.2f} R={metrics.recall:.2f} "
      f"F1={metrics.f1:.2f} acc={metrics.accuracy:.2f}")

# ---------------------------------------------------------------------------
# dial the miss rate up: sighting redundancy holds until the stream starves
# ---------------------------------------------------------------------------

print("\nmiss rate sweep (pixel sigma 2 px, false positive rate 0.02):")
print(f"  {'miss':>6} {'tp':>4} {'fp':>4} {'fn':>4} {'precision':>10} {'recall':>8}")
for miss in (0.0, 0.3, 0.6, 0.9):
    noise = NoiseSpec(pixel_sigma=2.0, miss_rate=miss, false_positive_rate=0.02)
    m = compute_metrics(match_issues(run_scan(noise, seed=4), gt))
    print(f"  {miss:>6.1f} {m.tp:>4} {m.fp:>4} {m.fn:>4} "
          f"{m.precision:>10.2f} {m.recall:>8.2f}")

# ---------------------------------------------------------------------------
# consistency: three repeated noisy scans of the same space
# ---------------------------------------------------------------------------

repeat_noise = NoiseSpec(pixel_sigma=2.0, miss_rate=0.25, false_positive_rate=0.02)
scans = [run_scan(repeat_noise, seed=s) for s in (1, 2, 3)]
per_scan = [compute_metrics(match_issues(s, gt)) for s in scans]
matrix = build_alpha_matrix(scans, gt)
alpha = krippendorff_alpha(matrix)
space = summarize_space(per_scan, alpha=alpha)

print(f"\nthree scans at miss rate 0.25:")
for k, m in enumerate(per_scan, start=1):
    print(f"  scan {k}: tp={m.tp} fp={m.fp} fn={m.fn} recall={m.recall:.2f}")
print(f"coding matrix is {len(matrix.raters)} raters x "
      f"{len(matrix.units)} issue slots")
print("space summary: " +
      " ".join(f"{k}={v:.2f}" for k, v in space.items() if v is not None))
assert abs(space["alpha"] - alpha) < 1e-12
