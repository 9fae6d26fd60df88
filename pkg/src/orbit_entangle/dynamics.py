"""Open-system evolution of the detector pair under its own acceleration radiation.

With the cross-detector vacuum terms dropped (they are suppressed at large
acceleration), each detector couples to the field through stationary
response rates Re I-+ and the pair obeys a Lindblad master equation with
four jump operators.  Everything downstream is closed form: the Bloch
coefficients, the density matrix, Wootters concurrence and the
entanglement-sudden-death time; a generic fixed-step integrator of the
same Lindblad generator serves as an internal cross-check.

Basis convention, fixed once: product basis ordered (gg, ge, eg, ee) where
g is the single-detector ground state.  The free Hamiltonian is
H0 = -(Omega/2)(sz x 1 + 1 x sz) with sz|g> = +|g>, so rho[0,0] is the
fraction of pairs with both detectors in the ground state and the Bell
state (|gg> + |ee>)/sqrt(2) has coherence rho[0,3] = 1/2.  All closed
forms live in the interaction picture (the free rotation is removed).

Time is the coordinate time of the center-of-rotation frame; figures
conventionally rescale it as t' = eta0^2 Omega t / gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RelaxationProfile", "BlochTensor", "TwoQubitState",
    "relaxation_profile", "bloch_solution", "density_at",
    "lindblad_integrate", "concurrence_general", "concurrence_closed",
    "esd_time", "equilibrium_state", "bell_state",
]

SQRT3 = math.sqrt(3.0)

_SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
# ground-ward jump |g><e| in the (g, e) ordering
_LOWER = np.array([[0, 1], [0, 0]], dtype=complex)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_SLACK = 1e-10


@dataclass(frozen=True)
class RelaxationProfile:
    """Response rates and derived timescales for one (Omega, a, eta0, gamma).

    re_i_minus/plus : stationary response rates Re I-+ (emission/absorption)
    delta           : detailed-balance asymmetry in (0, 1]; 1 at a = 0
    t1, t2          : relaxation and dephasing times, t2 = 2 t1 exactly
    beta_eff_omega  : beta_eff * Omega = ln((1+delta)/(1-delta)); inf at delta = 1
    t_eff           : effective temperature Omega/beta_eff_omega; 0 at delta = 1
    """

    omega_gap: float
    accel: float
    eta0: float
    gamma: float
    re_i_minus: float
    re_i_plus: float
    delta: float
    t1: float
    t2: float
    beta_eff_omega: float
    t_eff: float


def relaxation_profile(omega_gap: float, accel: float, eta0: float,
                       gamma: float = 1.0) -> RelaxationProfile:
    """Closed-form response rates from the quartic expansion of the orbit
    correlation function, and every timescale derived from them.

    Re I- = (gamma/4pi)(Omega + (a/4 sqrt3) e^{-2 sqrt3 Omega/a}),
    Re I+ = Re I- - gamma Omega/4pi, written in IRF inputs (the primed
    frame quantities Omega' = Omega/gamma, a' = a/gamma leave the ratio
    Omega/a invariant).  a = 0 is exact: delta = 1, Re I+ = 0, T_eff = 0.
    """
    if omega_gap <= 0:
        raise ValueError("omega_gap must be > 0")
    if accel < 0:
        raise ValueError("accel must be >= 0")
    if eta0 <= 0:
        raise ValueError("eta0 must be > 0")
    if gamma < 1.0:
        raise ValueError("gamma must be >= 1")
    if accel == 0.0:
        excitation = 0.0
        u = 0.0
    else:
        excitation = accel / (4.0 * SQRT3) * math.exp(-2.0 * SQRT3 * omega_gap / accel)
        u = 2.0 * excitation / omega_gap
    re_minus = gamma / (4.0 * math.pi) * (omega_gap + excitation)
    re_plus = gamma / (4.0 * math.pi) * excitation
    delta = 1.0 / (1.0 + u)
    t1 = math.pi * gamma * delta / (eta0 ** 2 * omega_gap)
    t2 = 2.0 * t1
    if u == 0.0:
        beta_eff_omega = math.inf
        t_eff = 0.0
    else:
        # (1+delta)/(1-delta) = 1 + 2/u, computed without cancellation
        beta_eff_omega = math.log1p(2.0 / u)
        t_eff = omega_gap / beta_eff_omega
    return RelaxationProfile(omega_gap=omega_gap, accel=accel, eta0=eta0,
                             gamma=gamma, re_i_minus=re_minus, re_i_plus=re_plus,
                             delta=delta, t1=t1, t2=t2,
                             beta_eff_omega=beta_eff_omega, t_eff=t_eff)


# ---------------------------------------------------------------------------
# states

@dataclass(frozen=True)
class BlochTensor:
    """Coefficients r_ij of rho = sum_ij r_ij sigma_i x sigma_j, i,j in {0,x,y,z}."""

    coefficients: np.ndarray  # (4, 4) real

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if c.shape != (4, 4):
            raise ValueError("coefficients must be a 4x4 array")
        object.__setattr__(self, "coefficients", c)

    def to_matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        for i in range(4):
            for j in range(4):
                if self.coefficients[i, j] != 0.0:
                    rho += self.coefficients[i, j] * np.kron(_SIGMA[i], _SIGMA[j])
        return rho


@dataclass(frozen=True)
class TwoQubitState:
    """4x4 density matrix in the (gg, ge, eg, ee) basis with a time stamp."""

    matrix: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError("matrix must be 4x4")
        object.__setattr__(self, "matrix", m)

    def validate(self, positivity_slack: float = POSITIVITY_SLACK) -> "TwoQubitState":
        m = self.matrix
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise ValueError("state is not Hermitian within tolerance")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise ValueError("state trace differs from 1")
        eigs = np.linalg.eigvalsh(m)
        if eigs.min() < -positivity_slack:
            raise ValueError(f"state has negative eigenvalue {eigs.min():.3e}")
        return self


def bell_state() -> TwoQubitState:
    """(|gg> + |ee>)/sqrt(2) as a density matrix."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = m[0, 3] = m[3, 0] = 0.5
    return TwoQubitState(matrix=m, time=0.0)


# ---------------------------------------------------------------------------
# closed-form evolution from the Bell state

def bloch_solution(profile: RelaxationProfile, t: float) -> BlochTensor:
    """Non-zero Bloch coefficients at time t, starting from the Bell state.

    r00 = 1/4, rxx = -ryy = s/4, r0z = rz0 = delta(1-s)/4 and
    rzz = delta^2 (1 - 2s + (1 + 1/delta^2) s^2)/4 with s = e^{-t/T2}
    (the T1 exponential equals s^2 since T2 = 2 T1).
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    d = profile.delta
    s = math.exp(-t / profile.t2)
    c = np.zeros((4, 4))
    c[0, 0] = 0.25
    c[1, 1] = 0.25 * s
    c[2, 2] = -0.25 * s
    c[0, 3] = c[3, 0] = 0.25 * d * (1.0 - s)
    c[3, 3] = 0.25 * (d * d * (1.0 - 2.0 * s) + (d * d + 1.0) * s * s)
    return BlochTensor(coefficients=c)


def density_at(profile: RelaxationProfile, t: float) -> TwoQubitState:
    """Closed-form density matrix at time t from the Bell state.

    Diagonal (rho00, rho11, rho22, rho33) plus the single surviving
    coherence rho03 = rho30 = s/2; rho11 = rho22 for all t.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    d = profile.delta
    s = math.exp(-t / profile.t2)
    s2 = s * s  # e^{-t/T1}
    rho00 = 0.25 * (s2 + (1.0 + d * (1.0 - s)) ** 2)
    rho11 = 0.25 * (1.0 - s2 - d * d * (1.0 - s) ** 2)
    rho33 = 0.25 * (s2 + (1.0 - d * (1.0 - s)) ** 2)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0], m[1, 1], m[2, 2], m[3, 3] = rho00, rho11, rho11, rho33
    m[0, 3] = m[3, 0] = 0.5 * s
    return TwoQubitState(matrix=m, time=t)


def equilibrium_state(profile: RelaxationProfile) -> TwoQubitState:
    """Long-time product state diag((1+delta)/2, (1-delta)/2) per detector.

    Equals the thermal state exp(-beta_eff H0)/Tr at the effective
    temperature; separable, so any initial entanglement is gone.
    """
    d = profile.delta
    single = np.diag([(1.0 + d) / 2.0, (1.0 - d) / 2.0]).astype(complex)
    return TwoQubitState(matrix=np.kron(single, single), time=math.inf)


# ---------------------------------------------------------------------------
# generic Lindblad integrator (internal cross-check)

def _jump_operators(profile: RelaxationProfile) -> list[np.ndarray]:
    eta_lab = profile.eta0 / profile.gamma
    eye = np.eye(2, dtype=complex)
    ops = []
    for rate, op in ((profile.re_i_minus, _LOWER),
                     (profile.re_i_plus, _LOWER.conj().T)):
        amp = eta_lab * math.sqrt(rate)
        ops.append(amp * np.kron(op, eye))
        ops.append(amp * np.kron(eye, op))
    return ops


def lindblad_integrate(profile: RelaxationProfile, rho0: TwoQubitState,
                       t_grid, max_step: float | None = None,
                       halving_check: bool = False) -> list[TwoQubitState]:
    """Integrate d rho/dt = sum_j (2 L_j rho L_j+ - {L_j+ L_j, rho}).

    Classic fixed-step 4th-order Runge-Kutta with step <= T2/200 (the
    generator is linear and non-stiff at these rates).  Trace is checked at
    every accepted step and hermiticity/positivity at every grid time;
    violations beyond slack abort.  ``halving_check`` reruns at half step
    and asserts agreement, as a convergence diagnostic.
    """
    rho0.validate()
    t_grid = [float(t) for t in t_grid]
    if not t_grid or t_grid[0] != 0.0:
        raise ValueError("t_grid must start at 0")
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise ValueError("t_grid must be strictly increasing")
    h_max = profile.t2 / 200.0 if max_step is None else float(max_step)

    ls = _jump_operators(profile)
    anticomm = sum(l.conj().T @ l for l in ls)

    def rhs(rho: np.ndarray) -> np.ndarray:
        out = -(anticomm @ rho + rho @ anticomm)
        for l in ls:
            out += 2.0 * (l @ rho @ l.conj().T)
        return out

    def advance(rho: np.ndarray, t0: float, t1: float, h: float) -> np.ndarray:
        n = max(1, math.ceil((t1 - t0) / h))
        dt = (t1 - t0) / n
        for _ in range(n):
            k1 = rhs(rho)
            k2 = rhs(rho + 0.5 * dt * k1)
            k3 = rhs(rho + 0.5 * dt * k2)
            k4 = rhs(rho + dt * k3)
            rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            tr = np.trace(rho)
            if abs(tr.real - 1.0) > 1e-12 or abs(tr.imag) > 1e-12:
                raise ArithmeticError(f"trace drifted to {tr} during integration")
        return rho

    out = [TwoQubitState(matrix=rho0.matrix.copy(), time=t_grid[0]).validate()]
    rho = rho0.matrix.copy()
    for t0, t1 in zip(t_grid, t_grid[1:]):
        rho = advance(rho, t0, t1, h_max)
        if halving_check:
            again = advance(out[-1].matrix, t0, t1, h_max / 2.0)
            drift = np.max(np.abs(again - rho))
            if drift > 1e-9:
                raise ArithmeticError(f"halving check failed: step drift {drift:.2e}")
        out.append(TwoQubitState(matrix=rho, time=t1).validate())
    return out


# ---------------------------------------------------------------------------
# concurrence and sudden death

def concurrence_general(rho: TwoQubitState) -> float:
    """Wootters concurrence from the spin-flip eigenvalues.

    C = max(l1 - l2 - l3 - l4, 0) where l_i are the descending positive
    square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
    """
    rho.validate()
    m = rho.matrix
    flip = np.kron(_SIGMA[2], _SIGMA[2])
    mm = m @ flip @ m.conj() @ flip
    eigs = np.linalg.eigvals(mm)
    lam = np.sqrt(np.abs(np.sort_complex(eigs)[::-1].real))
    return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0))


def concurrence_closed(profile: RelaxationProfile, t: float) -> float:
    """Concurrence of the Bell state evolved for time t.

    C(t) = max(-(1-delta^2)(1/2 - s) + (1+delta^2) s^2/2, 0), s = e^{-t/T2};
    exactly 1 at t = 0, strictly decreasing until it clamps at zero.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0.0:
        return 1.0
    d2 = profile.delta ** 2
    s = math.exp(-t / profile.t2)
    return max(-(1.0 - d2) * (0.5 - s) + 0.5 * (1.0 + d2) * s * s, 0.0)


def esd_time(profile: RelaxationProfile) -> float | None:
    """Entanglement-sudden-death time; None when the decay never reaches zero.

    t_esd = T2 ln((1+delta^2)/(sqrt(2(1-delta^2)) - 1 + delta^2)); the
    delta = 1 (zero acceleration) case decays as a pure exponential and
    returns None.  As delta -> 0 the ratio t_esd/T2 -> ln(1/(sqrt2 - 1)).
    """
    d2 = profile.delta ** 2
    if d2 >= 1.0:
        return None
    return profile.t2 * math.log((1.0 + d2) / (math.sqrt(2.0 * (1.0 - d2)) - 1.0 + d2))
