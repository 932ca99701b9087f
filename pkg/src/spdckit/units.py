"""Unit handling and physical constants.

All internal quantities are SI: lengths in meters, angular frequencies in
rad/s, times in seconds. Configuration files and the CLI accept quantity
strings with explicit unit suffixes ("521 nm", "20 mm", "5 THz") which are
parsed here. The "THz" suffix on a bandwidth denotes 1e12 rad/s, matching
the convention used throughout for spectral amplitude widths.
"""

from __future__ import annotations

import math

C_LIGHT = 299792458.0  # speed of light in vacuum, m/s

# Multipliers to SI for each accepted suffix, grouped by dimension.
_LENGTH_UNITS = {
    "m": 1.0,
    "cm": 1e-2,
    "mm": 1e-3,
    "um": 1e-6,
    "µm": 1e-6,
    "nm": 1e-9,
    "pm": 1e-12,
}

_ANGFREQ_UNITS = {
    "rad/s": 1.0,
    "THz": 1e12,   # bandwidth convention: 1 THz == 1e12 rad/s
    "GHz": 1e9,
}

_TIME_UNITS = {
    "s": 1.0,
    "ms": 1e-3,
    "us": 1e-6,
    "ns": 1e-9,
    "ps": 1e-12,
    "fs": 1e-15,
}

_DIMENSIONS = {
    "length": _LENGTH_UNITS,
    "angular_frequency": _ANGFREQ_UNITS,
    "time": _TIME_UNITS,
}


class UnitError(ValueError):
    """Raised when a quantity string cannot be parsed in the expected dimension."""


def parse_quantity(text: str | float | int, dimension: str) -> float:
    """Parse a quantity string like ``"521 nm"`` into an SI float.

    Args:
        text: Quantity string with a unit suffix. Bare numbers are accepted
            only for dimensionless use by callers; here they are rejected so
            that configs stay explicit about units.
        dimension: One of ``"length"``, ``"angular_frequency"``, ``"time"``.

    Returns:
        Value in SI units (m, rad/s, or s).

    Raises:
        UnitError: On malformed input, an unknown suffix, or a suffix from
            the wrong dimension.
    """
    units = _DIMENSIONS.get(dimension)
    if units is None:
        raise UnitError(f"unknown dimension {dimension!r}")
    if isinstance(text, (int, float)):
        raise UnitError(
            f"bare number {text!r} not allowed; write an explicit unit "
            f"(e.g. '521 nm')"
        )
    parts = str(text).strip().split()
    if len(parts) != 2:
        raise UnitError(f"expected '<value> <unit>', got {text!r}")
    raw_value, suffix = parts
    try:
        value = float(raw_value)
    except ValueError as exc:
        raise UnitError(f"non-numeric value in {text!r}") from exc
    if suffix not in units:
        for other_dim, other_units in _DIMENSIONS.items():
            if suffix in other_units and other_dim != dimension:
                raise UnitError(
                    f"unit {suffix!r} has dimension {other_dim}, expected {dimension}"
                )
        raise UnitError(f"unknown unit {suffix!r} in {text!r}")
    return value * units[suffix]


def format_length(meters: float) -> str:
    """Render a length with a readable suffix (used in reports and messages)."""
    scale = abs(meters)
    if scale >= 1e-3:
        return f"{meters * 1e3:.6g} mm"
    if scale >= 1e-6:
        return f"{meters * 1e6:.6g} um"
    return f"{meters * 1e9:.6g} nm"


def wavelength_to_omega(wavelength: float) -> float:
    """Vacuum wavelength (m) to angular frequency (rad/s)."""
    return 2.0 * math.pi * C_LIGHT / wavelength


def omega_to_wavelength(omega: float) -> float:
    """Angular frequency (rad/s) to vacuum wavelength (m)."""
    return 2.0 * math.pi * C_LIGHT / omega
