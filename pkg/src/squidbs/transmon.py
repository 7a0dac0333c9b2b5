"""Truncated-basis Hamiltonians of the displaced, driven SQUID common mode.

The common (coupler) mode is represented in the harmonic-oscillator basis of
its own linearization, with cos/sin of the phase operator evaluated through
the spectral decomposition of theta (exact in the truncated space, so parity
selection rules hold to rounding error rather than to a series-truncation
error).

In the displaced frame, with junction asymmetry d = (E_J1 - E_J2) / (E_J1 +
E_J2) and instantaneous displacement amplitudes (phi_d differential, phi_c
common), the Hamiltonian is

    H = 4 E_C n^2 - E_J (cos phi_c cos phi_d - d sin phi_c sin phi_d) cos theta
                  + E_J (sin phi_c cos phi_d + d cos phi_c sin phi_d) sin theta
                  - E_J (phi_c + d phi_d) theta

which reduces to 4 E_C n^2 - E_J cos(phi_d) cos(theta) for a symmetric,
purely differentially driven SQUID.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .device import DeviceParams


class TruncationError(RuntimeError):
    """Basis too small: low eigenvalues move when the dimension is doubled."""


def oscillator_ops(dim: int, theta_zpf: float) -> tuple[np.ndarray, np.ndarray]:
    """theta and n matrices in the oscillator basis, [theta, n] = i."""
    k = np.arange(1, dim)
    lower = np.diag(np.sqrt(k), -1)
    a = lower.T  # annihilation
    theta = theta_zpf * (a + a.T)
    n = 1j * (a.T - a) / (2.0 * theta_zpf)
    return theta, n


def _theta_functions(dim: int, theta_zpf: float):
    theta, n = oscillator_ops(dim, theta_zpf)
    lam, vec = np.linalg.eigh(theta)
    cos_theta = (vec * np.cos(lam)) @ vec.T
    sin_theta = (vec * np.sin(lam)) @ vec.T
    return theta, n, cos_theta, sin_theta


def drive_coefficients(params: DeviceParams, phi_d: float, phi_c: float):
    """(cos-theta, sin-theta, linear-theta) coefficients of the displaced Hamiltonian."""
    d = params.ej_asymmetry
    e_j = params.e_j
    c_cos = e_j * (np.cos(phi_c) * np.cos(phi_d) - d * np.sin(phi_c) * np.sin(phi_d))
    c_sin = e_j * (np.sin(phi_c) * np.cos(phi_d) + d * np.cos(phi_c) * np.sin(phi_d))
    c_lin = -e_j * (phi_c + d * phi_d)
    return c_cos, c_sin, c_lin


def linear_theta_coefficient(params: DeviceParams, phi_d: float, phi_c: float) -> float:
    """Net coefficient of the theta-linear term after the displaced-frame cancellation.

    Equals d/dx [-E_J1 cos_NL(x + phi_1) - E_J2 cos_NL(x + phi_2)] at x = 0
    with cos_NL(x) = cos(x) + x^2/2; zero for a purely differential drive.
    """
    _, c_sin, c_lin = drive_coefficients(params, phi_d, phi_c)
    return c_sin + c_lin


def dds_hamiltonian(
    params: DeviceParams, phi_d: float, phi_c: float, dim: int
) -> np.ndarray:
    """Displaced-frame SQUID Hamiltonian snapshot in the oscillator basis."""
    if dim < 10:
        raise ValueError("dim must be at least 10")
    theta, n, cos_t, sin_t = _theta_functions(dim, params.theta_zpf)
    c_cos, c_sin, c_lin = drive_coefficients(params, phi_d, phi_c)
    h = 4.0 * params.e_c * (n @ n).real - c_cos * cos_t + c_sin * sin_t + c_lin * theta
    return h


def parity_operator(dim: int) -> np.ndarray:
    """exp(i pi n_photon) in the oscillator basis: diag(+1, -1, +1, ...)."""
    return np.diag((-1.0) ** np.arange(dim))


def anharmonicity(params: DeviceParams, dim: int = 40) -> float:
    """E_12 - E_01 of the undriven coupler; about -E_C in the transmon regime."""
    evals = np.linalg.eigvalsh(dds_hamiltonian(params, 0.0, 0.0, dim))
    return (evals[2] - evals[1]) - (evals[1] - evals[0])


def check_truncation(
    params: DeviceParams,
    phi_d: float,
    phi_c: float,
    dim: int,
    n_levels: int = 3,
    tol: float = 1e-9,
) -> None:
    """Doubling-dim self check on the lowest eigenvalues; raises TruncationError."""
    e_small = np.linalg.eigvalsh(dds_hamiltonian(params, phi_d, phi_c, dim))[:n_levels]
    e_big = np.linalg.eigvalsh(dds_hamiltonian(params, phi_d, phi_c, 2 * dim))[:n_levels]
    scale = max(abs(e_big[n_levels - 1] - e_big[0]), abs(params.e_c))
    err = np.max(np.abs(e_small - e_big)) / scale
    if err > tol:
        raise TruncationError(
            f"lowest {n_levels} eigenvalues move by {err:.2e} (rel) when doubling dim={dim}"
        )


@dataclass(frozen=True)
class CouplerBasis:
    """Lowest eigenstates of the undriven coupler with drive operators projected in."""

    energies: np.ndarray      # eigenvalues, zeroed at the ground state (rad/s)
    parity: np.ndarray        # +-1 per eigenstate
    cos_theta: np.ndarray
    sin_theta: np.ndarray
    theta: np.ndarray
    charge: np.ndarray        # n operator, normalized so |<0|n|1>| = 1
    charge_raw: np.ndarray

    @property
    def dim(self) -> int:
        return self.energies.size


def coupler_eigenbasis(
    params: DeviceParams, n_keep: int = 50, n_build: int | None = None
) -> CouplerBasis:
    """Diagonalize the undriven coupler and project the drive operators.

    The model is the n_build-dimensional oscillator-basis Hamiltonian (default
    n_build = n_keep).  Over-sizing the build basis is not the default: once
    the spectral span of theta exceeds 2 pi, the periodic cosine acquires
    artificial side wells whose localized states pollute the mid spectrum,
    while the low-lying levels are already converged at dim 50.
    """
    if n_build is None:
        n_build = n_keep
    theta, n, cos_t, sin_t = _theta_functions(n_build, params.theta_zpf)
    h0 = 4.0 * params.e_c * (n @ n).real - params.e_j * cos_t
    evals, vecs = np.linalg.eigh(h0)
    vecs = vecs[:, :n_keep].copy()
    # deterministic gauge: largest oscillator component real positive
    for j in range(n_keep):
        k = np.argmax(np.abs(vecs[:, j]))
        if vecs[k, j] < 0:
            vecs[:, j] *= -1.0
    par_osc = (-1.0) ** np.arange(n_build)
    parity = np.round(np.einsum("ij,i,ij->j", vecs, par_osc, vecs)).astype(int)
    charge_raw = vecs.T @ (n @ vecs)
    scale = abs(charge_raw[0, 1])
    return CouplerBasis(
        energies=evals[:n_keep] - evals[0],
        parity=parity,
        cos_theta=vecs.T @ (cos_t @ vecs),
        sin_theta=vecs.T @ (sin_t @ vecs),
        theta=vecs.T @ (theta @ vecs),
        charge=charge_raw / scale,
        charge_raw=charge_raw,
    )
