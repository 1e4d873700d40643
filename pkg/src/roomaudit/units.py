"""Unit conversion and presentation rounding helpers.

Rubric thresholds are written in inches while scenes are metric, so the
conversion factor matters: it is exactly 2.54 cm per inch everywhere.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

METERS_PER_INCH = 0.0254
CM_PER_INCH = 2.54


def inches_to_meters(value_in: float) -> float:
    return value_in * METERS_PER_INCH


def meters_to_inches(value_m: float) -> float:
    return value_m / METERS_PER_INCH


def inches_to_cm(value_in: float) -> float:
    return value_in * CM_PER_INCH


def round_half_up(value: float, ndigits: int = 2) -> float:
    """Round with ties away from zero, the way results tables are printed.

    Python's built-in ``round`` uses banker's rounding (0.905 -> 0.9), which
    is the wrong tool for presentation; this helper goes through
    :class:`decimal.Decimal` so 0.905 -> 0.91.
    """
    q = Decimal(1).scaleb(-ndigits)
    return float(Decimal(repr(float(value))).quantize(q, rounding=ROUND_HALF_UP))
