"""Static device and drive data types plus the device parameter file format.

The device file is a flat key-value text format, one ``key = value unit`` per
line, ``#`` comments.  A canonical instance with the measured mode table and
Kerr table ships as package data (``data/canonical_device.params``); every
other module consumes device numbers only through :class:`DeviceParams`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .units import UnitError, parse_quantity

MODES = ("a", "b", "c")


class ConfigError(ValueError):
    """Invalid, missing or unknown key in a parameter file."""


@dataclass(frozen=True)
class DeviceParams:
    """Circuit and mode parameters; frequencies/energies angular (rad/s), rates 1/s."""

    e_j: float
    e_c: float
    ej_asymmetry: float
    omega_a: float
    omega_b: float
    omega_c: float
    g_a: float
    g_b: float
    kappa_a_down: float
    kappa_b_down: float
    kappa_c_down: float
    kappa_a_phi: float
    kappa_b_phi: float
    kappa_c_phi: float
    n_th: dict = field(default_factory=dict)
    kerr_matrix: np.ndarray = field(default=None)
    chi_bc: float = 0.0
    kappa_buffer: float = 0.0
    omega_buffer: float = 0.0
    kappa_ancilla_down: float = 0.0
    n_th_ancilla: float = 0.0

    def __post_init__(self):
        if self.e_j <= 0 or self.e_c <= 0:
            raise ValueError("E_J and E_C must be positive")
        if self.e_j / self.e_c <= 20:
            raise ValueError(
                f"E_J/E_C = {self.e_j / self.e_c:.1f} is outside the transmon regime (> 20)"
            )
        if abs(self.ej_asymmetry) >= 1:
            raise ValueError("junction asymmetry magnitude must be < 1")
        kerr = self.kerr_matrix
        if kerr is None:
            kerr = np.zeros((3, 3))
        kerr = np.asarray(kerr, dtype=float)
        if kerr.shape != (3, 3) or not np.allclose(kerr, kerr.T):
            raise ValueError("kerr_matrix must be a symmetric 3x3 table over (a, b, c)")
        object.__setattr__(self, "kerr_matrix", kerr)
        kerr.setflags(write=False)
        beta_a, beta_b = self.participations()
        if max(abs(beta_a), abs(beta_b)) >= 0.2:
            raise ValueError(
                f"participations ({beta_a:.3f}, {beta_b:.3f}) violate the dispersive assumption"
            )

    @property
    def delta_a(self) -> float:
        return self.omega_a - self.omega_c

    @property
    def delta_b(self) -> float:
        return self.omega_b - self.omega_c

    @property
    def delta_ab(self) -> float:
        return self.omega_b - self.omega_a

    @property
    def theta_zpf(self) -> float:
        """Zero-point spread of the coupler phase, (2 E_C / E_J)^(1/4)."""
        return (2.0 * self.e_c / self.e_j) ** 0.25

    def participations(self) -> tuple[float, float]:
        """Cavity participations beta_k = g_k / (omega_k - omega_c)."""
        for g, delta, name in (
            (self.g_a, self.delta_a, "a"),
            (self.g_b, self.delta_b, "b"),
        ):
            if g != 0 and abs(delta) < 5.0 * abs(g):
                raise ValueError(f"mode {name}: |detuning| < 5 g, dispersive assumption broken")
        beta_a = self.g_a / self.delta_a if self.g_a else 0.0
        beta_b = self.g_b / self.delta_b if self.g_b else 0.0
        return beta_a, beta_b


def ej_from_coupler_frequency(omega_c: float, e_c: float) -> float:
    """Invert the first-order transmon relation omega_c = sqrt(8 E_J E_C) - E_C."""
    return (omega_c + e_c) ** 2 / (8.0 * e_c)


@dataclass(frozen=True)
class DriveTone:
    """One actuator tone: junction-phase displacement amplitude, frequency, phase."""

    phi_amp: float
    omega: float
    phase: float = 0.0
    phi_common: float = 0.0

    def __post_init__(self):
        if self.phi_amp < 0:
            raise ValueError("phi_amp must be >= 0")
        if self.phi_amp >= math.pi:
            raise ValueError("phi_amp >= pi is outside the validity of the transmon expansion")


@dataclass(frozen=True)
class DriveConfig:
    """Two-tone drive; delta_d = omega_2 - omega_1 is the beamsplitter modulation."""

    tone1: DriveTone
    tone2: DriveTone
    resonance_window: float = float("inf")

    def __post_init__(self):
        if math.isfinite(self.resonance_window):
            if abs(self.delta_d) > self.resonance_window:
                raise ValueError("delta_d outside the configured resonance window")

    @property
    def delta_d(self) -> float:
        return self.tone2.omega - self.tone1.omega

    def with_amplitude_scale(self, scale: float) -> "DriveConfig":
        t1, t2 = self.tone1, self.tone2
        return DriveConfig(
            DriveTone(scale * t1.phi_amp, t1.omega, t1.phase, scale * t1.phi_common),
            DriveTone(scale * t2.phi_amp, t2.omega, t2.phase, scale * t2.phi_common),
            self.resonance_window,
        )


@dataclass(frozen=True)
class CircuitGeometry:
    """Lumped capacitance partition and sinusoidal drive-flux amplitudes."""

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    loop_inductance: float = 0.0
    flux_loop_left: float = 0.0
    flux_loop_right: float = 0.0
    flux_pad_2: float = 0.0
    flux_pad_3: float = 0.0

    def __post_init__(self):
        cs = (self.c1, self.c2, self.c3, self.c4, self.c5)
        if any(c < 0 for c in cs):
            raise ValueError("capacitances must be >= 0")
        if sum(cs) <= 0:
            raise ValueError("total shunting capacitance must be positive")

    @property
    def c_sigma(self) -> float:
        return self.c1 + self.c2 + self.c3 + self.c4 + self.c5


# device-file schema: key -> (unit kind, required)
_DEVICE_SCHEMA = {
    "e_j": ("frequency", False),
    "e_c": ("frequency", True),
    "ej_asymmetry": ("dimensionless", False),
    "omega_a": ("frequency", True),
    "omega_b": ("frequency", True),
    "omega_c": ("frequency", True),
    "g_a": ("frequency", True),
    "g_b": ("frequency", True),
    "kappa_a_down": ("rate", True),
    "kappa_b_down": ("rate", True),
    "kappa_c_down": ("rate", True),
    "kappa_a_phi": ("rate", True),
    "kappa_b_phi": ("rate", True),
    "kappa_c_phi": ("rate", True),
    "n_th_a": ("dimensionless", True),
    "n_th_b": ("dimensionless", True),
    "n_th_c": ("dimensionless", True),
    "kerr_aa": ("frequency", True),
    "kerr_bb": ("frequency", True),
    "kerr_cc": ("frequency", True),
    "kerr_ab": ("frequency", True),
    "kerr_ac": ("frequency", True),
    "kerr_bc": ("frequency", True),
    "chi_bc": ("frequency", False),
    "kappa_buffer": ("frequency", False),
    "omega_buffer": ("frequency", False),
    "kappa_ancilla_down": ("rate", False),
    "n_th_ancilla": ("dimensionless", False),
}


def parse_flat_file(text: str, schema: dict, where: str = "config") -> dict:
    """Parse ``key = value unit`` lines against a schema; unknown keys are fatal."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{where}:{lineno}: expected 'key = value unit', got {raw!r}")
        key, _, rhs = line.partition("=")
        key = key.strip()
        if key not in schema:
            raise ConfigError(f"{where}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{where}:{lineno}: duplicate key {key!r}")
        kind = schema[key][0]
        try:
            if kind == "str":
                values[key] = rhs.strip()
            elif kind == "int":
                values[key] = int(rhs.strip())
            elif kind == "int_list":
                values[key] = [int(tok) for tok in rhs.replace(",", " ").split()]
            else:
                values[key] = parse_quantity(rhs.strip(), kind, key=key)
        except (UnitError, ValueError) as exc:
            raise ConfigError(f"{where}:{lineno}: {exc}") from exc
    missing = [k for k, (_, required) in schema.items() if required and k not in values]
    if missing:
        raise ConfigError(f"{where}: missing required keys {missing}")
    return values


def load_device(path=None) -> DeviceParams:
    """Load a device file; with no path, the canonical shipped instance."""
    if path is None:
        text = resources.files("squidbs.data").joinpath("canonical_device.params").read_text()
        where = "canonical_device.params"
    else:
        with open(path) as fh:
            text = fh.read()
        where = str(path)
    values = parse_flat_file(text, _DEVICE_SCHEMA, where=where)
    e_c = values["e_c"]
    e_j = values.get("e_j", ej_from_coupler_frequency(values["omega_c"], e_c))
    kerr = np.zeros((3, 3))
    for i, mi in enumerate(MODES):
        for j, mj in enumerate(MODES):
            key = f"kerr_{min(mi, mj)}{max(mi, mj)}"
            kerr[i, j] = values[key]
    return DeviceParams(
        e_j=e_j,
        e_c=e_c,
        ej_asymmetry=values.get("ej_asymmetry", 0.0),
        omega_a=values["omega_a"],
        omega_b=values["omega_b"],
        omega_c=values["omega_c"],
        g_a=values["g_a"],
        g_b=values["g_b"],
        kappa_a_down=values["kappa_a_down"],
        kappa_b_down=values["kappa_b_down"],
        kappa_c_down=values["kappa_c_down"],
        kappa_a_phi=values["kappa_a_phi"],
        kappa_b_phi=values["kappa_b_phi"],
        kappa_c_phi=values["kappa_c_phi"],
        n_th={m: values[f"n_th_{m}"] for m in MODES},
        kerr_matrix=kerr,
        chi_bc=values.get("chi_bc", 0.0),
        kappa_buffer=values.get("kappa_buffer", 0.0),
        omega_buffer=values.get("omega_buffer", 0.0),
        kappa_ancilla_down=values.get("kappa_ancilla_down", 0.0),
        n_th_ancilla=values.get("n_th_ancilla", 0.0),
    )
