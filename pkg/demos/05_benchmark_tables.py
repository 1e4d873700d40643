"""
Recomputing the published benchmark tables from their raw counts
================================================================

Two fixture files ship with the package: thirty scans across ten home
spaces, and aggregate counts for thirteen issue types.  Both store the
integer tp/fp/fn counts *and* the rounded scores as originally reported,
so every scorer change is regression-checked against numbers that cannot
drift silently.

Recomputing also surfaces two cells in the per-issue table whose printed
value disagrees with its own row's counts (both rows' recall is
38/42 = 19/21 = 0.904762, which rounds to 0.90, printed as 0.91).  The
fixtures keep the printed values and flag the disagreement instead of
correcting history.
"""

from roomaudit.benchmark import (
    issue_summary,
    load_benchmark_scans,
    load_issue_counts,
    overall_summary,
    space_summary,
)
from roomaudit.units import round_half_up

# ---------------------------------------------------------------------------
# the 30-scan table: per-space means recomputed from counts
# ---------------------------------------------------------------------------

data = load_benchmark_scans()
print(f"{'space':<6} {'scans':>5} {'gt':>3} {'precision':>10} {'recall':>7} "
      f"{'f1':>5} {'accuracy':>9} {'alpha':>6} {'time':>5}")
for space in data["spaces"]:
    s = space_summary(space)
    print(f"{space['id']:<6} {len(space['scans']):>5} {space['gt_issues']:>3} "
          f"{s['precision']:>10.2f} {s['recall']:>7.2f} {s['f1']:>5.2f} "
          f"{s['accuracy']:>9.2f} {space['alpha']:>6.2f} {space['scan_time_s']:>5.0f}")

overall = overall_summary(data)
reported = data["reported_overall"]
print(f"{'mean':<6} {'':>5} {'':>3} {overall['precision']:>10.2f} "
      f"{overall['recall']:>7.2f} {overall['f1']:>5.2f} {overall['accuracy']:>9.2f} "
      f"{overall['alpha']:>6.2f} {overall['scan_time_s']:>5.1f}")
print(f"reported bottom row: {reported}")
for key, want in reported.items():
    assert abs(round_half_up(overall[key], 2) - want) < 0.015, (key, overall[key], want)

# ---------------------------------------------------------------------------
# the 13-row per-issue table, with the two known misprints flagged
# ---------------------------------------------------------------------------

counts = load_issue_counts()
misprinted = {(m["issue"], m["metric"]) for m in counts["known_misprints"]}
print(f"\n{'issue':<26} {'tp':>4} {'fp':>4} {'fn':>4}  recomputed vs reported")
for row in counts["rows"]:
    m = issue_summary(row)
    flags = []
    for metric in ("precision", "recall", "f1", "accuracy"):
        ours = round_half_up(getattr(m, metric), 2)
        theirs = row["reported"][metric]
        if ours != theirs:
            note = "known misprint" if (row["issue"], metric) in misprinted else "UNEXPECTED"
            flags.append(f"{metric}: {ours:.2f} vs printed {theirs:.2f} ({note})")
    verdict = "; ".join(flags) if flags else "all four agree"
    print(f"{row['issue']:<26} {row['tp']:>4} {row['fp']:>4} {row['fn']:>4}  {verdict}")
