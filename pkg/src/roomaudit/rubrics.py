"""Accessibility/safety rubric DSL: parsing, normalization, and selection.

Rubric files are JSON objects keyed by a human-readable rubric name; each
name maps to an object keyed by the check name, whose prefix encodes the
check kind::

    {
      "Counter": {
        "Dim_Height": {
          "Community": ["Wheelchair"],
          "Dependency": null,
          "Dimension": {"Comparison": "Between", "Value": [28, 34]},
          "RelativePosition": {"Comparison": null, "Value": null},
          "Existence": null,
          "Anchor": "top",
          "Note": "...", "Message": "...", "Description": "...",
          "Suggestions": [...], "Sources": [...]
        }
      }
    }

Check kinds: ``Dim_*`` measures an object dimension, ``Pos_*`` measures a
mounting position, and ``ExistenceOrNot`` checks that a category is present
(assistive items) or absent (risky items).  Thresholds live in the
``Dimension`` sub-object for both dimension and position checks and are in
inches; ``RelativePosition`` only supplies the search radius for existence
checks with a dependency.  ``Anchor`` is an extension that names which
height of the box a check measures: ``top``, ``bottom``, or ``center``.

The rubric id is ``<outer key>.<inner key>`` lowercased, e.g.
``counter.dim_height`` or ``knob.pos_height``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Sequence

from .scene import CATEGORIES

COMMUNITIES = ("Wheelchair", "Elder", "Children", "BLV")

#: Maps the leading token of a rubric name (lowercased, underscores removed)
#: to the scene category or wall-element kind the rubric applies to.  Several
#: rubric names share a category: counters and cabinets are both RoomPlan
#: ``storage``, knobs and door handles are both ``door_handle``.
TARGET_ALIASES = {
    "bathtub": "bathtub",
    "bed": "bed",
    "cabinet": "storage",
    "chair": "chair",
    "counter": "storage",
    "door": "door",
    "doorhandle": "door_handle",
    "electricsocket": "electric_socket",
    "firealarm": "smoke_alarm",
    "grabbar": "grab_bar",
    "knife": "knife",
    "knives": "knife",
    "knob": "door_handle",
    "lightswitch": "light_switch",
    "medication": "medication",
    "opening": "opening",
    "rug": "rug",
    "scissors": "scissors",
    "sink": "sink",
    "smokealarm": "smoke_alarm",
    "sofa": "sofa",
    "stairs": "stairs",
    "storage": "storage",
    "table": "table",
    "television": "television",
    "toilet": "toilet",
    "tub": "bathtub",
    "window": "window",
}

#: Wall-element kinds a rubric may target instead of an object category.
ELEMENT_TARGETS = ("door", "opening", "window")


class RubricParseError(ValueError):
    """A rubric file entry is malformed; the message names the entry."""


class CheckKind(str, Enum):
    DIMENSION = "dimension"
    POSITION = "position"
    EXISTENCE = "existence"


class Anchor(str, Enum):
    TOP = "top"
    BOTTOM = "bottom"
    CENTER = "center"


@dataclass(frozen=True)
class Comparison:
    """A compliance condition on a measured value (thresholds in inches).

    ``op`` is one of ``Between`` (two ascending values, inclusive),
    ``LessThan`` (one value; compliant when measured <= value), or
    ``GreaterThan`` (one value; compliant when measured >= value).  The
    bounds are inclusive on the compliant side, so a 27 in grab-bar radius
    is still compliant at exactly 27 in.
    """

    op: str
    values: tuple[float, ...]

    def satisfied(self, measured: float) -> bool:
        if self.op == "Between":
            return self.values[0] <= measured <= self.values[1]
        if self.op == "LessThan":
            return measured <= self.values[0]
        if self.op == "GreaterThan":
            return measured >= self.values[0]
        raise ValueError(f"unknown comparison op {self.op!r}")

    def side(self, measured: float) -> str:
        """'low', 'high', or 'inside' relative to the compliant region."""
        if self.satisfied(measured):
            return "inside"
        if self.op == "Between":
            return "low" if measured < self.values[0] else "high"
        if self.op == "LessThan":
            return "high"
        return "low"


@dataclass(frozen=True)
class Rubric:
    """One normalized rubric."""

    id: str
    name: str  # outer key as written in the file
    check: CheckKind
    target: str  # scene category, or element kind for door/opening checks
    communities: tuple[str, ...]
    message: str
    comparison: Comparison | None = None  # threshold in inches
    dependency: tuple[str, ...] = ()
    relative_position: Comparison | None = None  # radius in inches
    existence: bool | None = None
    anchor: Anchor | None = None
    note: str | None = None
    description: str | None = None
    suggestions: tuple[str, ...] = ()
    sources: tuple[dict, ...] = ()

    @property
    def targets_element(self) -> bool:
        """True when the rubric measures a wall element, not an object."""
        return self.check is CheckKind.DIMENSION and self.target in ELEMENT_TARGETS


def _resolve_target(name: str, path: str) -> str:
    token = name.split("_", 1)[0].lower()
    try:
        return TARGET_ALIASES[token]
    except KeyError:
        raise RubricParseError(f"{path}: cannot resolve target category from {name!r}") from None


def _check_kind(inner: str, path: str) -> CheckKind:
    low = inner.lower()
    if low.startswith("dim"):
        return CheckKind.DIMENSION
    if low.startswith("pos"):
        return CheckKind.POSITION
    if low.startswith("existence"):
        return CheckKind.EXISTENCE
    raise RubricParseError(f"{path}: unknown check kind {inner!r}")


def _parse_comparison(raw: Any, path: str) -> Comparison | None:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise RubricParseError(f"{path}: expected an object")
    op = raw.get("Comparison")
    values = raw.get("Value")
    if op is None and values in (None, []):
        return None
    if op not in ("Between", "LessThan", "GreaterThan"):
        raise RubricParseError(f"{path}.Comparison: unknown comparison {op!r}")
    if not isinstance(values, list) or not all(isinstance(v, (int, float)) for v in values):
        raise RubricParseError(f"{path}.Value: expected a list of numbers")
    arity = 2 if op == "Between" else 1
    if len(values) != arity:
        raise RubricParseError(
            f"{path}.Value: {op} takes {arity} value{'s' if arity > 1 else ''}, got {len(values)}"
        )
    if op == "Between" and not values[0] <= values[1]:
        raise RubricParseError(f"{path}.Value: Between bounds must be ascending")
    return Comparison(op=op, values=tuple(float(v) for v in values))


def _parse_communities(raw: Any, path: str) -> tuple[str, ...]:
    if raw is None:
        return ()
    if not isinstance(raw, list) or not all(isinstance(c, str) for c in raw):
        raise RubricParseError(f"{path}: expected a list of community names")
    for c in raw:
        if c not in COMMUNITIES:
            raise RubricParseError(
                f"{path}: unknown community {c!r} (expected one of {', '.join(COMMUNITIES)})"
            )
    return tuple(raw)


def _parse_one(name: str, inner_key: str, raw: dict, path: str) -> Rubric:
    check = _check_kind(inner_key, path)
    target = _resolve_target(name, path)
    communities = _parse_communities(raw.get("Community"), f"{path}.Community")

    dependency_raw = raw.get("Dependency")
    dependency: tuple[str, ...] = ()
    if dependency_raw not in (None, []):
        if not isinstance(dependency_raw, list):
            raise RubricParseError(f"{path}.Dependency: expected a list")
        dependency = tuple(_resolve_target(str(d), f"{path}.Dependency") for d in dependency_raw)

    comparison = _parse_comparison(raw.get("Dimension"), f"{path}.Dimension")
    relative = _parse_comparison(raw.get("RelativePosition"), f"{path}.RelativePosition")
    existence = raw.get("Existence")
    if existence is not None and not isinstance(existence, bool):
        raise RubricParseError(f"{path}.Existence: expected true/false")

    anchor_raw = raw.get("Anchor")
    anchor: Anchor | None = None
    if anchor_raw is not None:
        try:
            anchor = Anchor(str(anchor_raw))
        except ValueError:
            raise RubricParseError(f"{path}.Anchor: unknown anchor {anchor_raw!r}") from None

    message = raw.get("Message")
    if not isinstance(message, str) or not message:
        raise RubricParseError(f"{path}.Message: every rubric needs a message")

    if check in (CheckKind.DIMENSION, CheckKind.POSITION):
        if comparison is None:
            raise RubricParseError(f"{path}.Dimension: {inner_key} needs a threshold")
        if existence is not None:
            raise RubricParseError(f"{path}.Existence: not meaningful for {inner_key}")
        if check is CheckKind.POSITION and anchor is None:
            anchor = Anchor.CENTER
        if check is CheckKind.DIMENSION and anchor is None and target not in ELEMENT_TARGETS:
            anchor = Anchor.TOP
    else:
        if existence is None:
            raise RubricParseError(f"{path}.Existence: {inner_key} needs true/false")
        if dependency and relative is None:
            raise RubricParseError(
                f"{path}.RelativePosition: a dependency needs a search radius"
            )
        if existence is False and dependency:
            raise RubricParseError(f"{path}.Dependency: absence checks take no dependency")

    target_valid = target in CATEGORIES or target in ELEMENT_TARGETS
    if not target_valid:
        raise RubricParseError(f"{path}: target {target!r} is not a known category")

    suggestions = raw.get("Suggestions") or ()
    if suggestions and not all(isinstance(s, str) for s in suggestions):
        raise RubricParseError(f"{path}.Suggestions: expected a list of strings")
    sources = raw.get("Sources") or ()
    if sources and not all(isinstance(s, dict) for s in sources):
        raise RubricParseError(f"{path}.Sources: expected a list of objects")

    return Rubric(
        id=f"{name.lower()}.{inner_key.lower()}",
        name=name,
        check=check,
        target=target,
        communities=communities,
        message=message,
        comparison=comparison,
        dependency=dependency,
        relative_position=relative,
        existence=existence,
        anchor=anchor,
        note=raw.get("Note"),
        description=raw.get("Description"),
        suggestions=tuple(suggestions),
        sources=tuple(sources),
    )


def parse_rubrics(source: str | Path | dict) -> list[Rubric]:
    """Parse a rubric file (path, JSON text, or parsed dict) into rubrics.

    The result preserves file order.  Raises :class:`RubricParseError` with
    the offending entry named in the message.
    """
    if isinstance(source, dict):
        doc = source
    else:
        if isinstance(source, Path) or (
            isinstance(source, str) and not source.lstrip().startswith("{")
        ):
            try:
                text = Path(source).read_text(encoding="utf-8")
            except OSError as exc:
                raise RubricParseError(f"cannot read rubric file {source}: {exc}") from exc
        else:
            text = source
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RubricParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise RubricParseError("rubric document must be a JSON object")

    rubrics: list[Rubric] = []
    for name, group in doc.items():
        if not isinstance(group, dict) or not group:
            raise RubricParseError(f"{name}: expected an object of checks")
        for inner_key, raw in group.items():
            if not isinstance(raw, dict):
                raise RubricParseError(f"{name}.{inner_key}: expected an object")
            rubrics.append(_parse_one(name, inner_key, raw, f"{name}.{inner_key}"))
    ids = [r.id for r in rubrics]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise RubricParseError(f"duplicate rubric ids: {', '.join(dupes)}")
    return rubrics


def select_active(
    rubrics: Sequence[Rubric],
    communities: Iterable[str] = (),
    exclude: Iterable[str] = (),
) -> list[Rubric]:
    """Filter rubrics by community selection and explicit exclusions.

    An empty community selection means "audit everything".  Unknown community
    names and unknown exclusion ids raise ``ValueError`` so typos surface
    instead of silently auditing the wrong rule set.
    """
    selection = set(communities)
    for c in selection:
        if c not in COMMUNITIES:
            raise ValueError(f"unknown community {c!r} (expected one of {', '.join(COMMUNITIES)})")
    known = {r.id for r in rubrics}
    excluded = set(exclude)
    for rid in excluded:
        if rid not in known:
            raise ValueError(f"unknown rubric id in exclusion: {rid!r}")
    out = []
    for r in rubrics:
        if r.id in excluded:
            continue
        if selection and not selection.intersection(r.communities):
            continue
        out.append(r)
    return out


def default_rubrics_path() -> Path:
    """Path of the rubric set bundled with the package."""
    return Path(__file__).parent / "data" / "default_rubrics.json"


def load_default_rubrics() -> list[Rubric]:
    return parse_rubrics(default_rubrics_path())
