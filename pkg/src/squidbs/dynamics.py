"""Time-domain dynamics: Lindblad evolution, the dual-rail qubit and pulses.

The dual-rail qubit lives in the joint single-photon subspace; basis order is
(vacuum, photon-in-Bob, photon-in-Alice) with Bob the +z pole.  The closed
form for its driven decoherence,

    rho_DR(t) = e^{-kappa_1 t}/2 *
        [[1 + e^{-kappa_phi t} cos(Omega t),  i sin(Omega t) e^{-kappa_phi t}],
         [-i sin(Omega t) e^{-kappa_phi t},   1 - e^{-kappa_phi t} cos(Omega t)]]

with Omega = 2 g_BS, is the oracle for the master-equation solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import curve_fit

VAC, BOB, ALICE = 0, 1, 2

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class EvolveError(RuntimeError):
    """Integration violated a contract (trace, positivity or convergence)."""


class FitError(RuntimeError):
    """Curve fit failed: singular covariance or contrast below the noise."""


@dataclass(frozen=True)
class HilbertSpec:
    """Mode dimensions and frame tag of a truncated tensor-product space."""

    dims: tuple[int, ...]
    ordering: tuple[str, ...] = ("a", "b", "c")
    frame: str = "rotating"

    def __post_init__(self):
        if any(d < 2 for d in self.dims):
            raise ValueError("every mode needs at least 2 levels")

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))


@dataclass
class QuantumState:
    """Dense density matrix (or state vector) with its basis metadata."""

    data: np.ndarray
    spec: HilbertSpec | None = None

    @property
    def is_ket(self) -> bool:
        return self.data.ndim == 1

    def density_matrix(self) -> np.ndarray:
        if self.is_ket:
            return np.outer(self.data, self.data.conj())
        return self.data

    def validate(self, atol: float = 1e-9) -> None:
        rho = self.density_matrix()
        tr = float(np.trace(rho).real)
        if not -atol <= tr <= 1.0 + atol:
            raise ValueError(f"trace {tr} outside [0, 1]")
        if np.linalg.norm(rho - rho.conj().T) > atol * max(np.linalg.norm(rho), 1.0):
            raise ValueError("density matrix is not Hermitian")
        if np.linalg.eigvalsh(rho).min() < -1e-10 - atol:
            raise ValueError("density matrix has a significantly negative eigenvalue")


@dataclass
class LindbladModel:
    """Hamiltonian (constant matrix or callable of t) plus (operator, rate) channels."""

    hamiltonian: np.ndarray | Callable[[float], np.ndarray]
    collapse: list[tuple[np.ndarray, float]] = field(default_factory=list)

    def __post_init__(self):
        if any(rate < 0 for _, rate in self.collapse):
            raise ValueError("collapse rates must be >= 0")

    def h_at(self, t: float) -> np.ndarray:
        h = self.hamiltonian
        return h(t) if callable(h) else h


def evolve_master(
    model: LindbladModel,
    rho0: np.ndarray | QuantumState,
    times: Sequence[float],
    rtol: float = 1e-10,
    atol: float = 1e-12,
    trace_tol: float = 1e-9,
    check_positivity: bool = True,
) -> np.ndarray:
    """Integrate the Lindblad equation; returns density matrices at `times`.

    Adaptive Runge-Kutta with dense output; trace preservation is enforced to
    trace_tol and the final state is checked for negativity beyond -1e-8.
    """
    times = np.asarray(times, dtype=float)
    if times[0] != 0.0 or np.any(np.diff(times) <= 0):
        raise ValueError("times must increase strictly from 0")
    rho0 = rho0.density_matrix() if isinstance(rho0, QuantumState) else np.asarray(rho0)
    dim = rho0.shape[0]
    ls = [(np.asarray(op, dtype=complex), rate) for op, rate in model.collapse if rate > 0.0]
    ldl = [(op, op.conj().T @ op, rate) for op, rate in ls]
    h_const = None if callable(model.hamiltonian) else np.asarray(model.hamiltonian, complex)

    def rhs(t, y):
        rho = y.reshape(dim, dim)
        h = h_const if h_const is not None else np.asarray(model.hamiltonian(t))
        drho = -1j * (h @ rho - rho @ h)
        for op, opop, rate in ldl:
            drho += rate * (op @ rho @ op.conj().T - 0.5 * (opop @ rho + rho @ opop))
        return drho.ravel()

    sol = solve_ivp(
        rhs,
        (0.0, float(times[-1])),
        rho0.astype(complex).ravel(),
        t_eval=times,
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise EvolveError(f"master-equation integration failed: {sol.message}")
    rhos = sol.y.T.reshape(len(times), dim, dim)
    tr0 = float(np.trace(rho0).real)
    traces = np.einsum("tii->t", rhos).real
    drift = float(np.max(np.abs(traces - tr0)))
    if drift > trace_tol:
        raise EvolveError(f"trace drifted by {drift:.2e} (integrator tolerance too loose)")
    if check_positivity:
        if np.linalg.eigvalsh(rhos[-1]).min() < -1e-8:
            raise EvolveError("final state has negative population beyond tolerance")
    return rhos


def evolve_trajectory(
    model: LindbladModel,
    psi0: np.ndarray,
    t_final: float,
    n_steps: int,
    rng: np.random.Generator,
    record_times: Sequence[float] | None = None,
):
    """Jump/no-jump unraveling of one trajectory (fixed-step, inverse transform).

    Returns (final normalized ket, jump log [(time, channel index)], records).
    """
    ls = [(np.asarray(op, complex), rate) for op, rate in model.collapse]
    h_const = None if callable(model.hamiltonian) else np.asarray(model.hamiltonian, complex)

    def h_eff(t):
        h = h_const if h_const is not None else np.asarray(model.hamiltonian(t))
        heff = h.astype(complex).copy()
        for op, rate in ls:
            heff = heff - 0.5j * rate * (op.conj().T @ op)
        return heff

    dt = t_final / n_steps
    psi = psi0.astype(complex).copy()
    threshold = rng.random()
    jumps = []
    records = []
    rec_iter = iter(sorted(record_times)) if record_times is not None else iter([])
    next_rec = next(rec_iter, None)
    for j in range(n_steps):
        t = j * dt
        if next_rec is not None and t >= next_rec:
            records.append(psi / np.linalg.norm(psi))
            next_rec = next(rec_iter, None)
        k1 = -1j * (h_eff(t) @ psi)
        k2 = -1j * (h_eff(t + 0.5 * dt) @ (psi + 0.5 * dt * k1))
        k3 = -1j * (h_eff(t + 0.5 * dt) @ (psi + 0.5 * dt * k2))
        k4 = -1j * (h_eff(t + dt) @ (psi + dt * k3))
        psi = psi + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if np.vdot(psi, psi).real <= threshold:
            weights = np.array([rate * np.linalg.norm(op @ psi) ** 2 for op, rate in ls])
            if weights.sum() == 0:
                break
            ch = int(rng.choice(len(ls), p=weights / weights.sum()))
            op, _ = ls[ch]
            psi = op @ psi
            psi /= np.linalg.norm(psi)
            jumps.append(((j + 1) * dt, ch))
            threshold = rng.random()
    psi /= np.linalg.norm(psi)
    return psi, jumps, records


# ---------------------------------------------------------------------------
# dual-rail qubit

def dual_rail_analytic(g_bs: float, kappa_1: float, kappa_phi: float, t):
    """Closed-form dual-rail density matrix and Bob population at time(s) t."""
    t = np.asarray(t, dtype=float)
    omega = 2.0 * g_bs
    env1 = np.exp(-kappa_1 * t)
    envp = np.exp(-kappa_phi * t)
    cos = np.cos(omega * t)
    sin = np.sin(omega * t)
    rho = np.empty(t.shape + (2, 2), dtype=complex)
    rho[..., 0, 0] = 1.0 + envp * cos
    rho[..., 0, 1] = 1j * envp * sin
    rho[..., 1, 0] = -1j * envp * sin
    rho[..., 1, 1] = 1.0 - envp * cos
    rho *= (0.5 * env1)[..., None, None]
    p_bob = 0.5 * env1 * (1.0 + envp * cos)
    return rho, p_bob


def dual_rail_lindblad(
    g_bs: float, kappa_1: float, kappa_phi: float, phase: float = 0.0, s_gg0: float = 0.0
) -> LindbladModel:
    """Lindblad model on (vacuum, Bob, Alice) reproducing the analytic evolution.

    Decay is a jump to vacuum from each beamsplitter eigenstate at kappa_1.
    Dephasing uses the secular generator in the driven (dressed) basis: flips
    between the two eigenstates at kappa_phi/2 each way plus pure dephasing
    kappa_phi/4, which gives eigenbasis coherence decay at exactly kappa_phi
    with no frequency pulling.  s_gg0 (beamsplitter-rate fluctuation) adds to
    the pure-dephasing piece.
    """
    axis = math.cos(phase) * SIGMA_X + math.sin(phase) * SIGMA_Y
    evals, evecs = np.linalg.eigh(axis)
    plus = np.zeros(3, complex)
    minus = np.zeros(3, complex)
    plus[1:] = evecs[:, np.argmax(evals)]
    minus[1:] = evecs[:, np.argmin(evals)]
    vac = np.zeros(3, complex)
    vac[VAC] = 1.0
    h = np.zeros((3, 3), complex)
    h[1:, 1:] = g_bs * axis
    kphi = kappa_phi + s_gg0
    collapse = [
        (np.outer(vac, plus.conj()), kappa_1),
        (np.outer(vac, minus.conj()), kappa_1),
        (np.outer(plus, minus.conj()), 0.5 * kphi),
        (np.outer(minus, plus.conj()), 0.5 * kphi),
        (np.outer(plus, plus.conj()) - np.outer(minus, minus.conj()), 0.25 * kphi),
    ]
    return LindbladModel(hamiltonian=h, collapse=collapse)


def dual_rail_initial(which: int = BOB) -> np.ndarray:
    rho = np.zeros((3, 3), complex)
    rho[which, which] = 1.0
    return rho


def chevron(g_bs: float, delta_bs: float, t):
    """Detuned-Rabi Bob population; oscillates at sqrt(4 g^2 + Delta^2)."""
    t = np.asarray(t, dtype=float)
    omega = math.hypot(2.0 * g_bs, delta_bs)
    if omega == 0.0:
        return np.ones_like(t)
    contrast = (2.0 * g_bs / omega) ** 2
    return 1.0 - contrast * np.sin(0.5 * omega * t) ** 2


# ---------------------------------------------------------------------------
# two-window decoherence fit

@dataclass(frozen=True)
class DecoherenceFit:
    g_bs: float
    kappa_1: float
    kappa_phi: float
    amplitude: float
    offset: float
    phi0: float
    cov0: np.ndarray


def _fft_frequency_guess(t: np.ndarray, p: np.ndarray) -> tuple[float, float]:
    y = p - p.mean()
    spec = np.fft.rfft(y * np.hanning(len(y)))
    freqs = 2.0 * math.pi * np.fft.rfftfreq(len(t), t[1] - t[0])
    k = int(np.argmax(np.abs(spec[1:])) + 1)
    if np.abs(spec[k]) < 4.0 * np.median(np.abs(spec[1:])):
        raise FitError("oscillation contrast below the noise floor")
    return freqs[k], float(np.angle(spec[k]))


def fit_decoherence(
    window0: tuple[np.ndarray, np.ndarray],
    window_t: tuple[np.ndarray, np.ndarray],
    t_sep: float,
) -> DecoherenceFit:
    """Extract (g_BS, kappa_1, kappa_phi) from two short evolution windows.

    Window one (from t = 0) is fit to A (1 + cos(2 g t + phi0)) + B; window
    two (absolute times near t_sep) is fit with (A, B, g, phi0) frozen and
    envelopes A e^{-kappa_1 T} and e^{-kappa_phi T} solved in closed form.
    """
    t0, p0 = (np.asarray(v, dtype=float) for v in window0)
    t1, p1 = (np.asarray(v, dtype=float) for v in window_t)
    w_guess, ph_guess = _fft_frequency_guess(t0, p0)
    a_guess = 0.5 * (p0.max() - p0.min())

    def model0(t, a, b, g, phi0):
        return a * (1.0 + np.cos(2.0 * g * t + phi0)) + b

    p_opt, cov = curve_fit(
        model0,
        t0,
        p0,
        p0=[a_guess, p0.mean() - 2 * a_guess, 0.5 * w_guess, ph_guess],
        maxfev=20000,
    )
    if not np.all(np.isfinite(cov)):
        raise FitError("window-0 fit covariance is singular")
    a, b, g, phi0 = p_opt
    if a < 0:
        # fold A(1 + cos x) + B with A < 0 into A' > 0, x -> x + pi, B' = B + 2A
        b = b + 2.0 * a
        a, phi0 = -a, phi0 + math.pi
    # window T: linear regression on {1, cos} with the frozen phase
    basis = np.column_stack([np.ones_like(t1), np.cos(2.0 * g * t1 + phi0)])
    coef, *_ = np.linalg.lstsq(basis, p1, rcond=None)
    c1 = coef[0] - b
    c2 = coef[1] / c1
    if c1 <= 0 or not 0 < c2 <= 1.5:
        raise FitError("window-T envelopes outside the physical range")
    kappa_1 = -math.log(c1 / a) / t_sep
    kappa_phi = -math.log(min(c2, 1.0)) / t_sep if c2 < 1.0 else 0.0
    return DecoherenceFit(
        g_bs=abs(g), kappa_1=kappa_1, kappa_phi=kappa_phi,
        amplitude=a, offset=b, phi0=phi0 % (2.0 * math.pi), cov0=cov,
    )


# ---------------------------------------------------------------------------
# pulses

@dataclass(frozen=True)
class PulseEnvelope:
    """tanh-ramped drive envelope; epsilon(t) in [0, 1] is the amplitude^2 profile.

    The ramps are normalized tanh segments (exact 0 at the ends, exact 1 on
    the plateau), mirrored for ramp-down.  phi_d1/phi_d2 are the steady tone
    amplitudes, delta_d the drive-frequency difference and phase the
    beamsplitter phase; they parameterize the pulse for device-level use.
    """

    duration: float
    ramp_time: float = 16e-9
    steepness: float = 8.0
    phi_d1: float = 0.0
    phi_d2: float = 0.0
    delta_d: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if not 0 <= 2.0 * self.ramp_time <= self.duration:
            raise ValueError("ramps must fit inside the pulse")

    def amplitude_profile(self, t):
        """Normalized tone amplitude profile p(t); epsilon = p^2."""
        t = np.asarray(t, dtype=float)
        tr, k = self.ramp_time, self.steepness
        lo, hi = math.tanh(-0.5 * k), math.tanh(0.5 * k)
        if tr == 0.0:
            up = np.ones_like(t)
            down = np.ones_like(t)
        else:
            xu = np.clip(t / tr, 0.0, 1.0)
            xd = np.clip((self.duration - t) / tr, 0.0, 1.0)
            up = (np.tanh(k * (xu - 0.5)) - lo) / (hi - lo)
            down = (np.tanh(k * (xd - 0.5)) - lo) / (hi - lo)
        inside = (t >= 0.0) & (t <= self.duration)
        return np.where(inside, np.minimum(up, down), 0.0)

    def epsilon(self, t):
        return self.amplitude_profile(t) ** 2

    def epsilon_integral(self, n_steps: int = 4096) -> float:
        """Midpoint quadrature of epsilon over the pulse (superconvergent here)."""
        dt = self.duration / n_steps
        mids = (np.arange(n_steps) + 0.5) * dt
        return float(np.sum(self.epsilon(mids)) * dt)


@dataclass
class PulseResult:
    times: np.ndarray
    bloch: np.ndarray          # (3, n) trajectory of the Bloch vector
    theta: np.ndarray          # polar angle integral 2 int g eps dt'
    delta_phi: np.ndarray      # azimuthal phase drift integral
    final_state: np.ndarray
    unitary: np.ndarray


def _pauli_step_unitaries(hx, hy, hz, dt):
    """Exact exponentials exp(-i (h . sigma) dt) for stacked coefficients."""
    norm = np.sqrt(hx**2 + hy**2 + hz**2)
    ang = norm * dt
    sinc = np.where(norm > 0, np.sin(ang) / np.maximum(norm, 1e-300), dt)
    c = np.cos(ang)
    u = np.empty(np.shape(hx) + (2, 2), dtype=complex)
    u[..., 0, 0] = c - 1j * hz * sinc
    u[..., 1, 1] = c + 1j * hz * sinc
    u[..., 0, 1] = (-1j * hx - hy) * sinc
    u[..., 1, 0] = (-1j * hx + hy) * sinc
    return u


def pulse_unitary(
    envelope: PulseEnvelope,
    g_bs_peak,
    zeeman_coeff,
    delta_static,
    phase: float | None = None,
    n_steps: int = 2048,
) -> np.ndarray:
    """Dual-rail unitary of one pulse; scalar or broadcast array parameters.

    H(t) = (delta_static + zeeman_coeff eps(t)) sigma_z / 2
         + g_bs_peak eps(t) (cos(phase) sigma_x + sin(phase) sigma_y),
    stepped with exact midpoint Pauli exponentials.
    """
    if phase is None:
        phase = envelope.phase
    g, z, d, ph = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (g_bs_peak, zeeman_coeff, delta_static, phase))
    )
    dt = envelope.duration / n_steps
    mids = (np.arange(n_steps) + 0.5) * dt
    eps = envelope.epsilon(mids)
    u = np.broadcast_to(np.eye(2, dtype=complex), g.shape + (2, 2)).copy()
    cph, sph = np.cos(ph), np.sin(ph)
    for e in eps:
        hx = g * e * cph
        hy = g * e * sph
        hz = 0.5 * (d + z * e)
        u = _pauli_step_unitaries(hx, hy, hz, dt) @ u
    return u


def propagate_pulse(
    envelope: PulseEnvelope,
    zeeman_coeff: float,
    delta_static: float,
    g_bs_peak: float,
    psi0: np.ndarray | None = None,
    n_steps: int = 4096,
    n_record: int = 256,
) -> PulseResult:
    """Integrate the dual-rail Bloch dynamics of one ramped pulse.

    Also accumulates theta(t) = 2 int g eps dt' and the azimuthal drift
    delta_phi(t) = int sin(theta) (delta_static + zeeman_coeff eps)/2 dt'.
    """
    if psi0 is None:
        psi0 = np.array([1.0, 0.0], dtype=complex)
    dt = envelope.duration / n_steps
    mids = (np.arange(n_steps) + 0.5) * dt
    eps = envelope.epsilon(mids)
    cph, sph = math.cos(envelope.phase), math.sin(envelope.phase)
    every = max(1, n_steps // n_record)
    psi = psi0.astype(complex).copy()
    theta = 0.0
    dphi = 0.0
    times = [0.0]
    blochs = [_bloch_of(psi)]
    thetas = [0.0]
    dphis = [0.0]
    for j, e in enumerate(eps):
        u = _pauli_step_unitaries(
            g_bs_peak * e * cph, g_bs_peak * e * sph, 0.5 * (delta_static + zeeman_coeff * e), dt
        )
        psi = u @ psi
        theta += 2.0 * g_bs_peak * e * dt
        dphi += math.sin(theta) * 0.5 * (delta_static + zeeman_coeff * e) * dt
        if (j + 1) % every == 0 or j == n_steps - 1:
            times.append((j + 1) * dt)
            blochs.append(_bloch_of(psi))
            thetas.append(theta)
            dphis.append(dphi)
    unitary = pulse_unitary(envelope, g_bs_peak, zeeman_coeff, delta_static, n_steps=n_steps)
    return PulseResult(
        times=np.array(times),
        bloch=np.array(blochs).T,
        theta=np.array(thetas),
        delta_phi=np.array(dphis),
        final_state=psi,
        unitary=unitary,
    )


def _bloch_of(psi: np.ndarray) -> tuple[float, float, float]:
    rho = np.outer(psi, psi.conj())
    return (
        float(np.trace(rho @ SIGMA_X).real),
        float(np.trace(rho @ SIGMA_Y).real),
        float(np.trace(rho @ SIGMA_Z).real),
    )


def pulse_theta(envelope: PulseEnvelope, g_bs_peak: float, n_steps: int = 4096) -> float:
    """Total polar rotation angle 2 g int eps dt of a pulse."""
    return 2.0 * g_bs_peak * envelope.epsilon_integral(n_steps)


def pulse_phase_drift(
    envelope: PulseEnvelope,
    zeeman_coeff: float,
    delta_static: float,
    g_bs_peak: float,
    n_steps: int = 4096,
) -> float:
    """Azimuthal drift delta_phi at the end of the pulse (theta integral form)."""
    dt = envelope.duration / n_steps
    mids = (np.arange(n_steps) + 0.5) * dt
    eps = envelope.epsilon(mids)
    theta = 2.0 * g_bs_peak * np.cumsum(eps) * dt
    return float(np.sum(np.sin(theta) * 0.5 * (delta_static + zeeman_coeff * eps)) * dt)


# ---------------------------------------------------------------------------
# coherent-state swap with Kerr

def swap_fidelity_kerr(
    alpha: complex,
    kerr_static: float,
    kerr_driven: float,
    g_bs: float,
    pulse: PulseEnvelope | None = None,
    n_max: int | None = None,
    n_steps: int = 4096,
) -> float:
    """Infidelity of swapping |alpha> under self-Kerr on both cavities.

    The pulse is calibrated in the single-photon manifold (rotation area pi,
    where self-Kerr vanishes); the ideal target is the matching linear
    beamsplitter with the same single-photon phases.  The driven Kerr scales
    with the envelope like the beamsplitter rate; the static Kerr is always
    on.  Truncation must satisfy n_max >= |alpha|^2 + 5 |alpha| + 10.
    """
    a2 = abs(alpha) ** 2
    needed = int(math.ceil(a2 + 5.0 * math.sqrt(a2) + 10.0))
    if n_max is None:
        n_max = needed
    elif n_max < needed:
        raise ValueError(f"n_max={n_max} below coherent-state truncation bound {needed}")
    if pulse is None:
        pulse = PulseEnvelope(duration=math.pi / g_bs, ramp_time=16e-9)
    # calibrate the swap area: scale the peak rate so 2 g int eps dt = pi
    g_peak = math.pi / (2.0 * pulse.epsilon_integral())

    dim = n_max + 1
    n_op = np.arange(dim, dtype=float)
    kerr_diag = 0.5 * n_op * (n_op - 1.0)
    lower = np.diag(np.sqrt(np.arange(1, dim)), 1)  # annihilation
    hop = np.kron(lower.T, lower)
    hop = hop + hop.conj().T                        # a^dag b + a b^dag
    kerr_a = np.add.outer(kerr_diag, np.zeros(dim)).ravel()
    kerr_b = np.add.outer(np.zeros(dim), kerr_diag).ravel()
    kerr_both = kerr_a + kerr_b

    # initial |alpha>_a x |0>_b
    amps = np.exp(-0.5 * a2) * np.array(
        [alpha**n / math.sqrt(math.factorial(n)) for n in range(dim)], dtype=complex
    )
    leak = 1.0 - float(np.vdot(amps, amps).real)
    if leak > 1e-6:
        raise EvolveError(f"coherent-state truncation leak {leak:.1e}; enlarge the basis")
    psi = np.zeros(dim * dim, dtype=complex)
    psi[np.arange(dim) * dim] = amps

    dt = pulse.duration / n_steps
    mids = (np.arange(n_steps) + 0.5) * dt
    eps_mid = pulse.epsilon(mids)

    def rhs(e, vec):
        h = g_peak * e * (hop @ vec)
        h += (kerr_static + kerr_driven * e) * (kerr_both * vec)
        return -1j * h

    for e in eps_mid:
        k1 = rhs(e, psi)
        k2 = rhs(e, psi + 0.5 * dt * k1)
        k3 = rhs(e, psi + 0.5 * dt * k2)
        k4 = rhs(e, psi + dt * k3)
        psi = psi + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)

    # single-photon phase references from the same pulse
    u00, u_swap = _single_photon_elements(pulse, g_peak, kerr_static, kerr_driven, n_steps)
    tau = u_swap / u00
    target_b = np.exp(-0.5 * a2) * np.array(
        [(alpha * tau) ** n / math.sqrt(math.factorial(n)) for n in range(dim)], dtype=complex
    )
    target = np.zeros(dim * dim, dtype=complex)
    target[np.arange(dim)] = u00 * target_b   # |0>_a x |alpha tau>_b
    overlap = np.vdot(target, psi)
    return float(max(1.0 - abs(overlap) ** 2 / max(np.vdot(target, target).real, 1e-300), 0.0))


def _single_photon_elements(pulse, g_peak, kerr_static, kerr_driven, n_steps):
    """Vacuum amplitude and 1-photon transfer amplitude of the pulse.

    Kerr vanishes on the 0- and 1-photon states, so this is the linear
    beamsplitter restricted to (|1,0>, |0,1>); returns (u00, <01|U|10>).
    """
    dt = pulse.duration / n_steps
    mids = (np.arange(n_steps) + 0.5) * dt
    eps = pulse.epsilon(mids)
    u = np.eye(2, dtype=complex)
    for e in eps:
        u = _pauli_step_unitaries(g_peak * e, 0.0, 0.0, dt) @ u
    return 1.0 + 0.0j, u[1, 0]
