"""
The rubric catalog and what an audit of one room looks like
===========================================================

Rules live in a JSON file, one entry per accessibility or safety concern,
each with a machine-checkable compliant condition.  This script prints the
bundled catalog, audits a small hand-built room, and shows how community
filtering narrows the active set.
"""

import numpy as np

from roomaudit.audit import evaluate, resolve_message, rubric_category
from roomaudit.rubrics import default_rubrics_path, parse_rubrics, select_active
from roomaudit.scene import ParametricScene, Provenance, SceneObject, Wall

rubrics = parse_rubrics(default_rubrics_path())

# ---------------------------------------------------------------------------
# the catalog: 20 rules across four categories
# ---------------------------------------------------------------------------

by_category = {}
for rubric in rubrics:
    by_category.setdefault(rubric_category(rubric).value, []).append(rubric)

for category in sorted(by_category):
    print(f"{category}:")
    for rubric in by_category[category]:
        if rubric.comparison is not None:
            detail = f"{rubric.comparison.op} {list(rubric.comparison.values)} in"
        elif rubric.existence is False:
            detail = "should not be present"
        elif rubric.dependency:
            detail = f"required within reach of {'/'.join(rubric.dependency)}"
        else:
            detail = "must exist somewhere in the space"
        print(f"  {rubric.id:<40} {detail}")
    print()

# ---------------------------------------------------------------------------
# a room with three problems planted on purpose
# ---------------------------------------------------------------------------

walls = [
    Wall(id="w0", start=np.array([0.0, 0.0]), end=np.array([4.0, 0.0]), height=2.5),
    Wall(id="w1", start=np.array([4.0, 0.0]), end=np.array([4.0, 3.0]), height=2.5),
    Wall(id="w2", start=np.array([4.0, 3.0]), end=np.array([0.0, 3.0]), height=2.5),
    Wall(id="w3", start=np.array([0.0, 3.0]), end=np.array([0.0, 0.0]), height=2.5),
]


def box(object_id, category, center, half_extents):
    return SceneObject(id=object_id, category=category,
                       center=np.array(center, dtype=float),
                       half_extents=np.array(half_extents, dtype=float),
                       yaw=0.0, provenance=Provenance.RECONSTRUCTION)


scene = ParametricScene(id="demo-audit", walls=walls, objects=[
    # 0.95 m tabletop = 37.4 in, above the 28-34 in compliant band
    box("table_0", "table", [1.0, 1.0, 0.475], [0.6, 0.4, 0.475]),
    # a rug is a trip hazard wherever it lies
    box("rug_0", "rug", [3.0, 2.0, 0.005], [0.4, 0.3, 0.005]),
    # a light switch at 1.5 m (59 in) center, out of the 15-48 in band
    box("switch_0", "light_switch", [0.02, 1.5, 1.5], [0.015, 0.04, 0.06]),
])
# note: no smoke alarm anywhere, which is itself a finding

issues = evaluate(scene, rubrics)
print(f"audit of {scene.id}: {len(issues)} issues")
for issue in issues:
    where = "the space" if not issue.subject_ids else ", ".join(issue.subject_ids)
    measured = "" if issue.measured is None else f" (measured {issue.measured.value:.1f} {issue.measured.unit})"
    print(f"  {issue.id} [{issue.rubric_id}] on {where}{measured}")
    print(f"      {issue.message}")

# resolve_message picks the too-short/too-tall wording from the measurement
table_rubric = next(r for r in rubrics if r.id == "table.dim_height")
print("\nband messages:",
      repr(resolve_message(table_rubric, measured=25.0)), "/",
      repr(resolve_message(table_rubric, measured=40.0)))

# ---------------------------------------------------------------------------
# community filtering: each stakeholder group keeps only its own rules
# ---------------------------------------------------------------------------

for community in ("Wheelchair", "Children"):
    active = select_active(rubrics, communities=[community])
    flagged = evaluate(scene, active)
    print(f"{community}: {len(active)} active rubrics, "
          f"{len(flagged)} issues in this room")
