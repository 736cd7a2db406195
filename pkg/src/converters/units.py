"""
Unit suffixes accepted in configuration values and CLI flags.

Terminology used in this module:
- quantity: a number followed by an optional unit suffix (e.g. "18.45A", "5 m")
- kind: the physical dimension a key expects ("length", "time", "mass"), or
  None for dimensionless values
"""

import re

from errors import InvalidInputError
from physics.parameters import ATOMIC_MASS_UNIT

# Format: {suffix: factor to SI}
LENGTH_UNITS = {
    "m": 1.0,
    "mm": 1e-3,
    "um": 1e-6,
    "µm": 1e-6,
    "μm": 1e-6,
    "nm": 1e-9,
    "A": 1e-10,
    "Å": 1e-10,
}
TIME_UNITS = {
    "s": 1.0,
    "ms": 1e-3,
}
MASS_UNITS = {
    "kg": 1.0,
    "u": ATOMIC_MASS_UNIT,
}

# Format: {kind: {suffix: factor}}
UNITS_BY_KIND = {
    "length": LENGTH_UNITS,
    "time": TIME_UNITS,
    "mass": MASS_UNITS,
}

_QUANTITY = re.compile(r"^([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(\S*)$")


def split_quantity(text):
    """
    Split a quantity into its number and unit suffix.

    Returns:
        Tuple (number, suffix); suffix is "" when absent
    """
    match = _QUANTITY.match(text.strip())
    if not match:
        raise InvalidInputError(f"malformed number {text.strip()!r}")
    return float(match.group(1)), match.group(2)


def parse_quantity(text, kind=None, default_unit=None):
    """
    Convert a quantity to SI units.

    Args:
        text: Value text such as "21.9um" or "0.63"
        kind: "length", "time", "mass" or None for a dimensionless value
        default_unit: Suffix assumed when the text carries none; without it
            a missing unit is an error

    Returns:
        The value in SI units as a float
    """
    number, suffix = split_quantity(text)
    if kind is None:
        if suffix:
            raise InvalidInputError(f"dimensionless value takes no unit, got {suffix!r}")
        return number

    units = UNITS_BY_KIND[kind]
    suffix = suffix or (default_unit or "")
    if not suffix:
        raise InvalidInputError(f"missing {kind} unit; expected one of {', '.join(units)}")
    if suffix not in units:
        raise InvalidInputError(f"unknown {kind} unit {suffix!r}; expected one of {', '.join(units)}")
    return number * units[suffix]


def parse_range(text, kind=None, default_unit=None):
    """
    Parse "MIN:MAX:N" (grids) or "START:STOP:STEP" style triples.

    Returns:
        Tuple of three floats, the first two in SI units of ``kind``
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidInputError(f"expected three ':'-separated fields, got {text!r}")
    first = parse_quantity(parts[0], kind, default_unit)
    second = parse_quantity(parts[1], kind, default_unit)
    third = parse_quantity(parts[2])
    return first, second, third
