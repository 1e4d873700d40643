import math

import pytest

from roomaudit.units import (
    CM_PER_INCH,
    METERS_PER_INCH,
    inches_to_cm,
    inches_to_meters,
    meters_to_inches,
    round_half_up,
)


def test_conversion_constants():
    assert METERS_PER_INCH == 0.0254
    assert CM_PER_INCH == 2.54


def test_known_conversions():
    assert inches_to_meters(27) == pytest.approx(0.6858, abs=1e-12)
    assert inches_to_cm(28) == pytest.approx(71.12, abs=1e-12)
    assert meters_to_inches(0.65) == pytest.approx(25.5905511811, abs=1e-9)


@pytest.mark.parametrize("value", [0.0, 1.0, 17.0, 27.0, 32.5, 48.0, 1234.5678])
def test_inch_meter_round_trip(value):
    assert meters_to_inches(inches_to_meters(value)) == pytest.approx(value, abs=1e-9)
    assert inches_to_meters(meters_to_inches(value)) == pytest.approx(value, abs=1e-9)


@pytest.mark.parametrize(
    "value, ndigits, expected",
    [
        (0.905, 2, 0.91),
        (0.125, 2, 0.13),
        (0.875, 2, 0.88),
        (0.005, 2, 0.01),
        (2.675, 2, 2.68),
        (0.904762, 2, 0.90),
        (1.0, 2, 1.0),
        (0.1349, 2, 0.13),
        (99.949, 1, 99.9),
        (-0.005, 2, -0.01),  # ties round away from zero on both sides
    ],
)
def test_round_half_up(value, ndigits, expected):
    assert round_half_up(value, ndigits) == expected


def test_round_half_up_differs_from_bankers_rounding():
    # 0.125 is an exact binary tie: banker's rounding goes down, tables go up
    assert round(0.125, 2) == 0.12
    assert round_half_up(0.125, 2) == 0.13


def test_round_half_up_is_idempotent():
    for v in [0.904762, 0.8649, 0.135]:
        once = round_half_up(v, 2)
        assert round_half_up(once, 2) == once
        assert math.isclose(once, round_half_up(once, 2))
