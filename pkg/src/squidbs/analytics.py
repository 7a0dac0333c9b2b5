"""Closed-form rate and shift formulas; the oracle layer for the numerics.

Conventions: angular frequencies (rad/s) throughout, 1/e rates in 1/s,
amplitudes are junction-phase displacements in radians.  The two-tone drive
is differential unless a tone carries an explicit common-mode component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import e as _e_charge, hbar as _hbar
from scipy.optimize import brentq
from scipy.special import j0, j1, jv

from .device import CircuitGeometry, DeviceParams, DriveConfig

PHI0_REDUCED = _hbar / (2.0 * _e_charge)


class InconsistentInputsError(ValueError):
    """Joint inversion has no root in the physical amplitude range."""


def participations(params: DeviceParams) -> tuple[float, float]:
    return params.participations()


def _require_differential(drives: DriveConfig) -> None:
    if drives.tone1.phi_common != 0.0 or drives.tone2.phi_common != 0.0:
        raise ValueError("formula assumes a purely differential two-tone drive")


def analytic_g_bs(params: DeviceParams, drives: DriveConfig) -> float:
    """Beamsplitter rate (omega_c/2) beta_a beta_b J1(|phi_1|) J1(|phi_2|)."""
    _require_differential(drives)
    beta_a, beta_b = params.participations()
    return (
        0.5
        * params.omega_c
        * beta_a
        * beta_b
        * j1(abs(drives.tone1.phi_amp))
        * j1(abs(drives.tone2.phi_amp))
    )


@dataclass(frozen=True)
class ZeemanShifts:
    """Drive-induced mode shifts: exact Bessel form and quadratic approximation."""

    exact: tuple[float, float, float]      # (a, b, c)
    quadratic: tuple[float, float, float]

    @property
    def delta_ab(self) -> float:
        """Relative cavity shift Z_a - Z_b entering the resonance condition."""
        return self.exact[0] - self.exact[1]


def zeeman_shifts(params: DeviceParams, drives: DriveConfig) -> ZeemanShifts:
    """AC-Zeeman shifts (omega_c/2) [J0 J0 - 1] beta_k^2 for k = a, b, c.

    The quadratic form is the consistent small-amplitude limit
    -(omega_c/8) (phi_1^2 + phi_2^2) beta_k^2 from 1 - J0(x) ~ x^2/4.
    """
    _require_differential(drives)
    beta_a, beta_b = params.participations()
    betas2 = (beta_a**2, beta_b**2, 1.0)
    p1, p2 = abs(drives.tone1.phi_amp), abs(drives.tone2.phi_amp)
    bessel = 0.5 * params.omega_c * (j0(p1) * j0(p2) - 1.0)
    quad = -params.omega_c / 8.0 * (p1**2 + p2**2)
    return ZeemanShifts(
        exact=tuple(bessel * b2 for b2 in betas2),
        quadratic=tuple(quad * b2 for b2 in betas2),
    )


def bs_resonance(params: DeviceParams, drives: DriveConfig) -> float:
    """Drive-frequency difference giving a resonant beamsplitter.

    Delta_BS = Delta_ab - Delta_d + Delta_Z,ab vanishes at
    Delta_d = Delta_ab + Delta_Z,ab.
    """
    return params.delta_ab + zeeman_shifts(params, drives).delta_ab


def ge3_rate(params: DeviceParams, phi_c: float, phi_d: float) -> float:
    """Three-drive-photon coupler Rabi rate E_J theta_zpf phi_c (phi_c^2/3 + phi_d^2)."""
    return params.e_j * params.theta_zpf * phi_c * (abs(phi_c) ** 2 / 3.0 + abs(phi_d) ** 2)


def single_tone_zeeman(params: DeviceParams, phi_c: float, phi_d: float) -> tuple[float, float]:
    """Coupler Zeeman shift of a single tone with common and differential parts.

    Returns the exact (omega_c/2)[J0(|phi_c|) J0(|phi_d|) - 1] and the
    -(omega_c/8)(phi_c^2 + phi_d^2) approximation.
    """
    exact = 0.5 * params.omega_c * (j0(abs(phi_c)) * j0(abs(phi_d)) - 1.0)
    quad = -params.omega_c / 8.0 * (phi_c**2 + phi_d**2)
    return exact, quad


def infer_drive_asymmetry(
    omega_ge3: float, zeeman_c: float, params: DeviceParams
) -> tuple[float, float, float]:
    """Solve the ge/3 rate and single-tone Zeeman shift jointly for (phi_c, phi_d, l).

    Bisection on phi_d with phi_c eliminated through the ge/3 equation at each
    trial; l = |phi_c| / sqrt(phi_c^2 + phi_d^2).
    """
    if omega_ge3 == 0.0:
        if zeeman_c == 0.0:
            return 0.0, 0.0, 0.0
        phi_d = _invert_single_tone_zeeman(zeeman_c, params, phi_c=0.0)
        return 0.0, phi_d, 0.0
    if zeeman_c >= 0.0:
        raise InconsistentInputsError("single-tone Zeeman shift must be negative")

    def phi_c_of(phi_d: float) -> float:
        # cubic omega = E_J theta_zpf (phi_c^3/3 + phi_d^2 phi_c), monotone in phi_c
        f = lambda pc: ge3_rate(params, pc, phi_d) - omega_ge3
        hi = 1.0
        while f(hi) < 0 and hi < 64.0:
            hi *= 2.0
        return brentq(f, 0.0, hi, xtol=1e-18, rtol=8.9e-16)

    def mismatch(phi_d: float) -> float:
        return single_tone_zeeman(params, phi_c_of(phi_d), phi_d)[0] - zeeman_c

    lo, hi = 1e-9, 2.4
    if mismatch(lo) < 0 or mismatch(hi) > 0:
        raise InconsistentInputsError("no (phi_c, phi_d) reproduces both observables")
    phi_d = brentq(mismatch, lo, hi, xtol=1e-18, rtol=8.9e-16)
    phi_c = phi_c_of(phi_d)
    return phi_c, phi_d, phi_c / math.hypot(phi_c, phi_d)


def _invert_single_tone_zeeman(zeeman_c: float, params: DeviceParams, phi_c: float) -> float:
    f = lambda pd: single_tone_zeeman(params, phi_c, pd)[0] - zeeman_c
    if f(1e-9) < 0 or f(2.4) > 0:
        raise InconsistentInputsError("Zeeman shift outside the invertible range")
    return brentq(f, 1e-9, 2.4, xtol=1e-18, rtol=8.9e-16)


@dataclass(frozen=True)
class FidelityBound:
    kappa_bs: float
    t_bs: float
    linearized: float
    exact: float


def bs_fidelity_bound(g_bs: float, kappa_1: float, kappa_phi: float) -> FidelityBound:
    """Decoherence bound on one 50:50 beamsplitter at t_BS = pi / (4 g_BS).

    kappa_BS = kappa_1 + kappa_phi/2; the linearized bound is
    1 - (pi/4) kappa_BS / g_BS and the exact overlap is
    (exp(-kappa_1 t) + exp(-(kappa_1 + kappa_phi) t)) / 2.
    """
    kappa_bs = kappa_1 + 0.5 * kappa_phi
    t_bs = math.pi / (4.0 * g_bs)
    linearized = 1.0 - 0.25 * math.pi * kappa_bs / g_bs
    exact = 0.5 * (math.exp(-kappa_1 * t_bs) + math.exp(-(kappa_1 + kappa_phi) * t_bs))
    return FidelityBound(kappa_bs=kappa_bs, t_bs=t_bs, linearized=linearized, exact=exact)


def buffer_backaction(
    params: DeviceParams, n_th: float, n_coh: float, drive_detuning: float
) -> tuple[float, float]:
    """Coupler dephasing from buffer photon-number fluctuations.

    Gamma_th = chi^2 n_th / kappa_B and
    Gamma_coh = chi^2 n_coh (kappa_B/2) / ((omega_d - omega_B)^2 + (kappa_B/2)^2).
    """
    chi2 = params.chi_bc**2
    half = 0.5 * params.kappa_buffer
    gamma_th = chi2 * n_th / params.kappa_buffer
    gamma_coh = chi2 * n_coh * half / (drive_detuning**2 + half**2)
    return gamma_th, gamma_coh


def vemf(geom: CircuitGeometry, drive_frequency: float) -> float:
    """Electromotive voltage amplitude of the sinusoidally driven flux partition."""
    c_l = geom.c2 + geom.c4
    c_r = geom.c3 + geom.c5
    c_sigma = geom.c_sigma
    flux_delta = geom.flux_loop_left - geom.flux_loop_right
    flux_sigma = geom.flux_loop_left + geom.flux_loop_right
    return drive_frequency * (
        0.5 * geom.c1 / c_sigma * flux_delta
        + c_l / c_sigma * (0.5 * flux_sigma + geom.flux_pad_2)
        - c_r / c_sigma * (0.5 * flux_sigma + geom.flux_pad_3)
    )


def vemf_root(geometry_of_offset, drive_frequency: float, lo: float, hi: float) -> float:
    """Pad offset nulling V_emf, from a user-supplied offset -> geometry table."""
    f = lambda delta: vemf(geometry_of_offset(delta), drive_frequency)
    return brentq(f, lo, hi, xtol=1e-15)


@dataclass(frozen=True)
class SidebandCondition:
    mismatch: float   # n |Delta_d| - Delta_bc, zero at the n-th collision
    delta_bc: float   # Zeeman-dressed coupler-Bob detuning (coupler above Bob)
    coupling: float   # omega_c J_n J_n beta_b


def sideband_condition(params: DeviceParams, drives: DriveConfig, n: int) -> SidebandCondition:
    """Mismatch and strength of the n-th coupler-Bob sideband collision."""
    shifts = zeeman_shifts(params, drives)
    delta_bc = (params.omega_c + shifts.exact[2]) - (params.omega_b + shifts.exact[1])
    _, beta_b = params.participations()
    coupling = (
        params.omega_c
        * jv(n, abs(drives.tone1.phi_amp))
        * jv(n, abs(drives.tone2.phi_amp))
        * beta_b
    )
    return SidebandCondition(
        mismatch=n * abs(drives.delta_d) - delta_bc,
        delta_bc=delta_bc,
        coupling=coupling,
    )


def sideband_collision_scale(
    params: DeviceParams, drives: DriveConfig, n: int, lo: float = 1e-3, hi: float = 2.0
) -> float:
    """Amplitude scale factor at which the n-th sideband collides.

    The bracket must keep every scaled amplitude below pi.
    """
    f = lambda s: sideband_condition(params, drives.with_amplitude_scale(s), n).mismatch
    return brentq(f, lo, hi, xtol=1e-12)


@dataclass(frozen=True)
class DcFluxPoint:
    omega_coupler: float
    hybridized: bool
    ej_effective: float


def coupler_freq_vs_dc_flux(
    params: DeviceParams, phi_dc: float, loop_inductance: float = 0.0
) -> DcFluxPoint:
    """Coupler frequency against DC flux (phi_dc = Phi_ext / phi_0, radians).

    Symmetric-SQUID tuning E_J(Phi) = E_J |cos(phi_dc / 2)| with optional
    junction asymmetry and linear-inductance screening of the loop flux, then
    level repulsion from the two cavities via the 3-mode linear model.
    Points where the coupler leaves the transmon regime or approaches a
    cavity within 5 g are flagged as hybridization-dominated.
    """
    half = 0.5 * phi_dc
    if loop_inductance > 0.0:
        l_j = PHI0_REDUCED**2 / (_hbar * params.e_j)
        half /= 1.0 + loop_inductance / (4.0 * l_j)
    d = params.ej_asymmetry
    ej_eff = params.e_j * math.sqrt(math.cos(half) ** 2 + (d * math.sin(half)) ** 2)
    if ej_eff / params.e_c <= 20.0:
        return DcFluxPoint(omega_coupler=0.0, hybridized=True, ej_effective=ej_eff)
    omega_bare = math.sqrt(8.0 * ej_eff * params.e_c) - params.e_c
    h = np.array(
        [
            [params.omega_a, 0.0, params.g_a],
            [0.0, params.omega_b, params.g_b],
            [params.g_a, params.g_b, omega_bare],
        ]
    )
    evals, evecs = np.linalg.eigh(h)
    branch = int(np.argmax(np.abs(evecs[2, :])))
    hybridized = bool(
        abs(omega_bare - params.omega_a) < 5.0 * params.g_a
        or abs(omega_bare - params.omega_b) < 5.0 * params.g_b
    )
    return DcFluxPoint(
        omega_coupler=float(evals[branch]), hybridized=hybridized, ej_effective=ej_eff
    )
