"""Parsing and formatting of unit-suffixed quantities.

Config files carry dimensional values as strings with explicit unit
suffixes ("500um", "10GHz", "1W").  Bare numbers are accepted and taken
as base SI units; suffixed strings are strongly preferred in configs to
avoid silent unit mistakes.
"""

from __future__ import annotations

import re

from .errors import ConfigInvalid

_QUANTITY_RE = re.compile(r"^\s*([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)\s*(.*?)\s*$")

LENGTH_UNITS = {
    "m": 1.0,
    "cm": 1e-2,
    "mm": 1e-3,
    "um": 1e-6,
    "µm": 1e-6,
    "nm": 1e-9,
}
AREA_UNITS = {"m2": 1.0, "mm2": 1e-6, "um2": 1e-12, "µm2": 1e-12}
FREQUENCY_UNITS = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}
POWER_UNITS = {
    "W": 1.0,
    "kW": 1e3,
    "mW": 1e-3,
    "uW": 1e-6,
    "µW": 1e-6,
    "nW": 1e-9,
    "pW": 1e-12,
}
TEMPERATURE_UNITS = {"K": 1.0, "mK": 1e-3}
RESISTANCE_UNITS = {"ohm": 1.0, "Ohm": 1.0, "kohm": 1e3, "mohm": 1e-3}
INDUCTANCE_UNITS = {"H": 1.0, "uH": 1e-6, "µH": 1e-6, "nH": 1e-9, "pH": 1e-12}
CAPACITANCE_UNITS = {"F": 1.0, "uF": 1e-6, "µF": 1e-6, "nF": 1e-9, "pF": 1e-12, "fF": 1e-15}
PRESSURE_UNITS = {"Pa": 1.0, "kPa": 1e3, "MPa": 1e6, "N/mm2": 1e6}


def parse_quantity(value, units: dict[str, float], field: str = "value") -> float:
    """Convert `value` to base SI units.

    Numbers pass through unchanged; strings must match "<number><unit>"
    with a unit from `units`.
    """
    if isinstance(value, bool):
        raise ConfigInvalid(field, "expected a quantity, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ConfigInvalid(field, f"expected number or unit string, got {type(value).__name__}")
    m = _QUANTITY_RE.match(value)
    if not m:
        raise ConfigInvalid(field, f"cannot parse quantity {value!r}")
    number, suffix = m.groups()
    try:
        magnitude = float(number)
    except ValueError:
        raise ConfigInvalid(field, f"cannot parse number in {value!r}") from None
    if not suffix:
        raise ConfigInvalid(field, f"missing unit suffix in {value!r} (e.g. {value}{next(iter(units))!r})")
    if suffix not in units:
        raise ConfigInvalid(
            field, f"unknown unit {suffix!r} in {value!r}; expected one of {sorted(units)}"
        )
    return magnitude * units[suffix]


def parse_length(value, field: str = "length") -> float:
    return parse_quantity(value, LENGTH_UNITS, field)


def parse_area(value, field: str = "area") -> float:
    return parse_quantity(value, AREA_UNITS, field)


def parse_frequency(value, field: str = "frequency") -> float:
    return parse_quantity(value, FREQUENCY_UNITS, field)


def parse_power(value, field: str = "power") -> float:
    return parse_quantity(value, POWER_UNITS, field)


def parse_temperature(value, field: str = "temperature") -> float:
    return parse_quantity(value, TEMPERATURE_UNITS, field)


def parse_resistance(value, field: str = "resistance") -> float:
    return parse_quantity(value, RESISTANCE_UNITS, field)


def parse_inductance(value, field: str = "inductance") -> float:
    return parse_quantity(value, INDUCTANCE_UNITS, field)


def parse_capacitance(value, field: str = "capacitance") -> float:
    return parse_quantity(value, CAPACITANCE_UNITS, field)


def parse_pressure(value, field: str = "pressure") -> float:
    return parse_quantity(value, PRESSURE_UNITS, field)


def format_length(meters: float) -> str:
    """Render a length in the most natural of µm / mm / m."""
    a = abs(meters)
    if a < 1e-3:
        return f"{meters * 1e6:.6g}um"
    if a < 1.0:
        return f"{meters * 1e3:.6g}mm"
    return f"{meters:.6g}m"
