"""Unit handling for config files and reports.

Internally every frequency, energy and Kerr is angular (rad/s) and every
decay/dephasing rate is a plain 1/e rate (1/s).  Config files quote ordinary
frequencies with an explicit suffix (GHz/MHz/kHz/Hz), rates as 1/s-style
suffixes, amplitudes in rad or units of pi.  The suffix is mandatory: silent
unit guessing is how 2-pi bugs happen.
"""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi

# suffix -> multiplier taking the quoted number to internal units
_FREQUENCY = {"GHz": TWO_PI * 1e9, "MHz": TWO_PI * 1e6, "kHz": TWO_PI * 1e3, "Hz": TWO_PI}
_RATE = {"1/s": 1.0, "1/ms": 1e3, "1/us": 1e6}
_TIME = {"s": 1.0, "ms": 1e-3, "us": 1e-6, "ns": 1e-9}
_AMPLITUDE = {"rad": 1.0, "pi": math.pi}
_PLAIN = {"1": 1.0}
_CAPACITANCE = {"F": 1.0, "pF": 1e-12, "fF": 1e-15}
_INDUCTANCE = {"H": 1.0, "nH": 1e-9, "pH": 1e-12}
_FLUX = {"Wb": 1.0, "Phi0": 2.067833848e-15}

UNIT_TABLES = {
    "frequency": _FREQUENCY,
    "rate": _RATE,
    "time": _TIME,
    "amplitude": _AMPLITUDE,
    "dimensionless": _PLAIN,
    "capacitance": _CAPACITANCE,
    "inductance": _INDUCTANCE,
    "flux": _FLUX,
}


class UnitError(ValueError):
    """Malformed or mismatched unit suffix in a config value."""


def parse_quantity(text: str, kind: str, key: str = "?") -> float:
    """Parse ``"<number> <suffix>"`` into internal units of the given kind."""
    table = UNIT_TABLES[kind]
    parts = text.split()
    if len(parts) != 2:
        raise UnitError(
            f"{key}: expected '<value> <unit>' with unit in {sorted(table)}, got {text!r}"
        )
    value, suffix = parts
    if suffix not in table:
        raise UnitError(f"{key}: unknown {kind} unit {suffix!r}; allowed: {sorted(table)}")
    try:
        number = float(value)
    except ValueError as exc:
        raise UnitError(f"{key}: cannot parse number {value!r}") from exc
    return number * table[suffix]


def format_angular_ghz(omega: float) -> str:
    """Render an angular frequency as the conventional omega/2pi quote in GHz."""
    return f"{omega / TWO_PI / 1e9:.6f} GHz"
