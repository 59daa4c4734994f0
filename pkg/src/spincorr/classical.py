"""Classical spin-orbit dynamics at linear order in the field strength.

The total Hamiltonian is the relativistic orbital energy plus the spin
coupling -s.F_pi, where F_pi is the precession angular velocity built
from the kinematic momentum. Hamilton's equations pick up the
field-gradient (Stern-Gerlach) force from the spin term, and the spin
itself precesses as ds/dt = s x F_pi. Quadratic-in-field remainders are
deliberately dropped; their size is measured, not modeled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import FieldSample, sample_field
from .kinematics import PhaseState, gamma_pi, kinematic_momentum, v_pi
from .lorentz import bmt_rhs, boost_fields, field_tensor, four_velocity, spin_four_vector_lab
from .params import ParticleParams


class IntegrationError(RuntimeError):
    """Adaptive step underflow; carries the partial trajectory."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DiagnosticError(RuntimeError):
    """A trajectory diagnostic cannot be evaluated on the given input."""


# ---------------------------------------------------------------------------
# Hamiltonians


def precession_vector(pi: np.ndarray, E: np.ndarray, B: np.ndarray, params: ParticleParams) -> np.ndarray:
    """Instantaneous precession angular velocity F_pi(pi, E, B).

    Three terms: magnetic torque, longitudinal-polarization correction
    (coefficient gamma_m - e/mc, vanishing at g = 2), and the spin-orbit
    term with its Thomas-precession weight.
    """
    pi = np.asarray(pi, dtype=float)
    g = gamma_pi(pi, params)
    gm, e, mc = params.gamma_m, params.e, params.mc
    a = gm - e / mc + e / (mc * g)
    b = (gm - e / mc) / (g * (g + 1.0) * mc ** 2)
    d = gm / (mc * g) - e / (mc ** 2 * (g + 1.0))
    return a * np.asarray(B, float) - b * (pi @ B) * pi - d * np.cross(pi, np.asarray(E, float))


def low_speed_precession_vector(pi: np.ndarray, E: np.ndarray, B: np.ndarray, params: ParticleParams) -> np.ndarray:
    """Leading small-velocity form of F_pi; differs at relative O(beta^2)."""
    beta = v_pi(pi, params) / params.c
    gm, e, mc = params.gamma_m, params.e, params.mc
    return (
        gm * np.asarray(B, float)
        - 0.5 * (gm - e / mc) * (beta @ B) * beta
        - (gm - e / (2.0 * mc)) * np.cross(beta, np.asarray(E, float))
    )


def h_orbit(state: PhaseState, model, params: ParticleParams) -> float:
    sample = sample_field(model, state.x)
    pi = kinematic_momentum(state.p, sample.A, params)
    return gamma_pi(pi, params) * params.mc2 + params.e * sample.phi


def h_spin(state: PhaseState, model, params: ParticleParams) -> float:
    sample = sample_field(model, state.x)
    pi = kinematic_momentum(state.p, sample.A, params)
    return -float(state.s @ precession_vector(pi, sample.E, sample.B, params))


def h_total(state: PhaseState, model, params: ParticleParams) -> float:
    return h_orbit(state, model, params) + h_spin(state, model, params)


# ---------------------------------------------------------------------------
# Analytic gradients

def _spin_grad(pi, s, sample: FieldSample, params):
    """d(H_spin)/d(pi) and the explicit-x gradient d(H_spin)/dx at fixed pi.

    H_spin = -a(g) s.B + b(g)(pi.B)(s.pi) + d(g) s.(pi x E) with
    g = gamma_pi; chain rule uses dg/dpi_k = pi_k/(g (mc)^2).
    """
    E, B = sample.E, sample.B
    g = gamma_pi(pi, params)
    gm, e, mc = params.gamma_m, params.e, params.mc
    a = gm - e / mc + e / (mc * g)
    da = -e / (mc * g * g)
    kb = (gm - e / mc) / mc ** 2
    b = kb / (g * (g + 1.0))
    db = -kb * (2.0 * g + 1.0) / (g * (g + 1.0)) ** 2
    d = gm / (mc * g) - e / (mc ** 2 * (g + 1.0))
    dd = -gm / (mc * g * g) + e / (mc ** 2 * (g + 1.0) ** 2)

    sB = float(s @ B)
    piB = float(pi @ B)
    spi = float(s @ pi)
    pixE = float(s @ np.cross(pi, E))

    dg_dpi = pi / (g * mc ** 2)
    dH_dpi = (
        (-da * sB + db * piB * spi + dd * pixE) * dg_dpi
        + b * (B * spi + piB * s)
        + d * np.cross(E, s)
    )
    # explicit field gradients, columns grad[:, j] = d(field)/dx_j
    dH_dx = (
        -a * (s @ sample.grad_B)
        + b * spi * (pi @ sample.grad_B)
        + d * (np.cross(pi, sample.grad_E.T) @ s)
    )
    return dH_dpi, dH_dx


def _grad_h_arrays(x, p, s, model, params):
    sample = sample_field(model, x)
    pi = kinematic_momentum(p, sample.A, params)
    dHs_dpi, dHs_dx = _spin_grad(pi, s, sample, params)
    dH_dpi = v_pi(pi, params) + dHs_dpi
    # canonical x-gradient: scalar potential, explicit field gradients,
    # and the chain through pi(x) = p - (e/c)A(x)
    dH_dx = (
        params.e * sample.grad_phi
        + dHs_dx
        - (params.e / params.c) * (sample.jac_A.T @ dH_dpi)
    )
    return dH_dx, dH_dpi, sample, pi


def grad_h(state: PhaseState, model, params: ParticleParams):
    """Analytic (dH/dx, dH/dp) of the total Hamiltonian."""
    dH_dx, dH_dp, _, _ = _grad_h_arrays(state.x, state.p, state.s, model, params)
    return dH_dx, dH_dp


def _eom_arrays(x, p, s, model, params):
    dH_dx, dH_dp, sample, pi = _grad_h_arrays(x, p, s, model, params)
    ds = np.cross(s, precession_vector(pi, sample.E, sample.B, params))
    return dH_dp, -dH_dx, ds


def eom_rhs(state: PhaseState, model, params: ParticleParams):
    """(dx/dt, dp/dt, ds/dt) of the full Hamilton flow with precession."""
    return _eom_arrays(state.x, state.p, state.s, model, params)


def stern_gerlach_force(x, p, s, model, params: ParticleParams) -> np.ndarray:
    """Field-gradient 3-force -grad(H_spin) at fixed kinematic momentum.

    This is the linear-in-field piece; the chain through A(x) inside pi
    is quadratic in the field strength and excluded.
    """
    sample = sample_field(model, x)
    pi = kinematic_momentum(p, sample.A, params)
    _, dHs_dx = _spin_grad(pi, s, sample, params)
    return -dHs_dx


def darwin_classical_hd(state: PhaseState, model, params: ParticleParams, A_D: float) -> float:
    """Candidate velocity-dependent density coupling c A_D (div E - v.curl B / c).

    A diagnostic only: the quantum Darwin term carries an extra inverse
    gamma weighting that this expression cannot reproduce.
    """
    sample = sample_field(model, state.x)
    pi = kinematic_momentum(state.p, sample.A, params)
    v = v_pi(pi, params)
    return params.c * A_D * (sample.div_E - float(v @ sample.curl_B) / params.c)


# ---------------------------------------------------------------------------
# Integration


@dataclass(frozen=True)
class IntegratorSpec:
    method: str = "rk4"
    step: float = 1e-3
    tol: float = 1e-10
    max_steps: int = 10_000_000

    def __post_init__(self):
        if self.method not in ("rk4", "rkf45"):
            raise ValueError("method must be 'rk4' or 'rkf45'")
        if not (self.step > 0 and self.tol > 0 and self.max_steps > 0):
            raise ValueError("step, tol and max_steps must be positive")


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    x: np.ndarray
    p: np.ndarray
    s: np.ndarray
    h_total: np.ndarray
    s_mag: np.ndarray
    spin_drift: np.ndarray

    def __len__(self):
        return len(self.t)

    def state(self, i: int) -> PhaseState:
        return PhaseState(self.x[i], self.p[i], self.s[i], float(self.t[i]))


# relative |s| drift beyond which the spin is renormalized; the raw drift
# is still accumulated in spin_drift so the integrator stays honest
SPIN_RENORM_THRESHOLD = 1e-12


def _h_total_arrays(x, p, s, model, params):
    sample = sample_field(model, x)
    pi = kinematic_momentum(p, sample.A, params)
    orbital = gamma_pi(pi, params) * params.mc2 + params.e * sample.phi
    return orbital - float(s @ precession_vector(pi, sample.E, sample.B, params))


def integrate(
    state0: PhaseState,
    model,
    params: ParticleParams,
    spec: IntegratorSpec,
    T: float,
) -> Trajectory:
    """Integrate Hamilton's flow for duration T, recording conservation data."""
    if T <= 0:
        raise ValueError("duration must be positive")
    if spec.method == "rk4":
        return _integrate_rk4(state0, model, params, spec, T)
    return _integrate_rkf45(state0, model, params, spec, T)


def _integrate_rk4(state0, model, params, spec, T):
    n = max(1, int(round(T / spec.step)))
    if n > spec.max_steps:
        raise ValueError("step count exceeds max_steps")
    dt = T / n
    x, p, s = state0.x.copy(), state0.p.copy(), state0.s.copy()
    t = state0.t
    s0_mag = float(np.linalg.norm(s))

    ts = np.empty(n + 1)
    xs = np.empty((n + 1, 3))
    ps = np.empty((n + 1, 3))
    ss = np.empty((n + 1, 3))
    hs = np.empty(n + 1)
    smags = np.empty(n + 1)
    drifts = np.empty(n + 1)

    def record(i, drift):
        ts[i] = t
        xs[i], ps[i], ss[i] = x, p, s
        hs[i] = _h_total_arrays(x, p, s, model, params)
        smags[i] = np.linalg.norm(s)
        drifts[i] = drift

    drift_cum = 0.0
    record(0, 0.0)
    for i in range(1, n + 1):
        mag_before = float(np.linalg.norm(s))
        kx1, kp1, ks1 = _eom_arrays(x, p, s, model, params)
        kx2, kp2, ks2 = _eom_arrays(x + 0.5 * dt * kx1, p + 0.5 * dt * kp1, s + 0.5 * dt * ks1, model, params)
        kx3, kp3, ks3 = _eom_arrays(x + 0.5 * dt * kx2, p + 0.5 * dt * kp2, s + 0.5 * dt * ks2, model, params)
        kx4, kp4, ks4 = _eom_arrays(x + dt * kx3, p + dt * kp3, s + dt * ks3, model, params)
        x = x + (dt / 6.0) * (kx1 + 2 * kx2 + 2 * kx3 + kx4)
        p = p + (dt / 6.0) * (kp1 + 2 * kp2 + 2 * kp3 + kp4)
        s = s + (dt / 6.0) * (ks1 + 2 * ks2 + 2 * ks3 + ks4)
        t = state0.t + i * dt

        raw = float(np.linalg.norm(s))
        drift_cum += (raw - mag_before) / s0_mag
        if abs(raw - s0_mag) / s0_mag > SPIN_RENORM_THRESHOLD:
            s = s * (s0_mag / raw)
        record(i, drift_cum)

    return Trajectory(ts, xs, ps, ss, hs, smags, drifts)


# Fehlberg 4(5) tableau
_RKF_A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)
_RKF_B5 = (16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)
_RKF_B4 = (25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0)


def _integrate_rkf45(state0, model, params, spec, T):
    def rhs(y):
        dx, dp, ds = _eom_arrays(y[0:3], y[3:6], y[6:9], model, params)
        return np.concatenate([dx, dp, ds])

    y = np.concatenate([state0.x, state0.p, state0.s])
    t = 0.0
    h = min(spec.step, T)
    s0_mag = float(np.linalg.norm(state0.s))

    rows = [(state0.t, y.copy(), 0.0)]
    drift_cum = 0.0
    steps = 0
    while t < T * (1.0 - 1e-12):
        if steps >= spec.max_steps:
            raise IntegrationError("max step count exceeded", _rows_to_traj(rows, model, params))
        h = min(h, T - t)
        if h < 1e-14 * max(1.0, abs(t)):
            raise IntegrationError("step size underflow", _rows_to_traj(rows, model, params))
        ks = []
        for row in _RKF_A:
            yk = y + h * sum(a * k for a, k in zip(row, ks)) if row else y
            ks.append(rhs(yk))
        y5 = y + h * sum(b * k for b, k in zip(_RKF_B5, ks))
        y4 = y + h * sum(b * k for b, k in zip(_RKF_B4, ks))
        err = float(np.abs(y5 - y4).max())
        scale = spec.tol * max(1.0, float(np.abs(y).max()))
        if err <= scale:
            mag_before = float(np.linalg.norm(y[6:9]))
            t += h
            y = y5
            raw = float(np.linalg.norm(y[6:9]))
            drift_cum += (raw - mag_before) / s0_mag
            if abs(raw - s0_mag) / s0_mag > SPIN_RENORM_THRESHOLD:
                y[6:9] *= s0_mag / raw
            rows.append((state0.t + t, y.copy(), drift_cum))
        factor = 0.9 * (scale / err) ** 0.2 if err > 0 else 5.0
        h *= min(5.0, max(0.2, factor))
        steps += 1
    return _rows_to_traj(rows, model, params)


def _rows_to_traj(rows, model, params):
    ts = np.array([r[0] for r in rows])
    ys = np.stack([r[1] for r in rows])
    drifts = np.array([r[2] for r in rows])
    hs = np.array([_h_total_arrays(y[0:3], y[3:6], y[6:9], model, params) for y in ys])
    smags = np.linalg.norm(ys[:, 6:9], axis=1)
    return Trajectory(ts, ys[:, 0:3], ys[:, 3:6], ys[:, 6:9], hs, smags, drifts)


# ---------------------------------------------------------------------------
# Covariant consistency diagnostic


def bmt_consistency_residual(
    traj: Trajectory,
    model,
    params: ParticleParams,
    include_gradient_force: bool = True,
) -> float:
    """Max deviation between the numerical dS/dtau and the covariant RHS.

    The lab spin 4-vector is rebuilt along the trajectory, differentiated
    with a five-point fourth-order stencil (dtau = dt/gamma_pi), and
    compared against the covariant precession RHS. The non-Lorentz force
    enters as f = (f3.v_pi/c, gamma_pi * f3) with f3 the field-gradient
    force, making f orthogonal to the 4-velocity for static fields.
    """
    n = len(traj)
    if n < 5:
        raise DiagnosticError("need at least 5 uniform samples for the stencil")
    dts = np.diff(traj.t)
    dt = float(dts[0])
    if np.abs(dts - dt).max() > 1e-9 * abs(dt):
        raise DiagnosticError("stencil differentiation needs a uniform time grid")

    S = np.empty((n, 4))
    rhs = np.empty((n, 4))
    gammas = np.empty(n)
    for i in range(n):
        x, p, s = traj.x[i], traj.p[i], traj.s[i]
        sample = sample_field(model, x)
        pi = kinematic_momentum(p, sample.A, params)
        g = gamma_pi(pi, params)
        gammas[i] = g
        S[i] = spin_four_vector_lab(s, pi, params)
        U = four_velocity(pi, params)
        if include_gradient_force:
            f3 = gamma_pi(pi, params) * stern_gerlach_force(x, p, s, model, params)
            f = np.concatenate([[f3 @ v_pi(pi, params) / params.c], f3])
        else:
            f = np.zeros(4)
        rhs[i] = bmt_rhs(S[i], U, field_tensor(sample.E, sample.B), f, params)

    # five-point interior stencil, then dS/dtau = gamma * dS/dt
    idx = np.arange(2, n - 2)
    dSdt = (S[idx - 2] - 8 * S[idx - 1] + 8 * S[idx + 1] - S[idx + 2]) / (12.0 * dt)
    resid = gammas[idx, None] * dSdt - rhs[idx]
    return float(np.abs(resid).max())


# ---------------------------------------------------------------------------
# Boost covariance of the precession vector


def boosted_precession_pair(
    pi: np.ndarray,
    s: np.ndarray,
    E: np.ndarray,
    B: np.ndarray,
    beta: np.ndarray,
    params: ParticleParams,
    drop_spin_energy: bool = True,
):
    """(gamma * F_pi(pi, E, B), F_pi(pi', E', B')) under the boost rules.

    The momentum rule boosts (kinetic energy / c, pi) as a 4-vector. With
    drop_spin_energy the kinetic energy is the orbital part alone, which
    is the replacement rule's weak-field step; keeping the spin energy
    exposes the quadratic-in-field remainder instead.
    """
    pi = np.asarray(pi, dtype=float)
    beta = np.asarray(beta, dtype=float)
    b2 = float(beta @ beta)
    if b2 >= 1.0:
        raise ValueError("boost speed must satisfy |beta| < 1")
    g = 1.0 / np.sqrt(1.0 - b2)
    Ep, Bp = boost_fields(E, B, beta)
    kinetic = gamma_pi(pi, params) * params.mc2
    if not drop_spin_energy:
        kinetic += -float(np.asarray(s, float) @ precession_vector(pi, E, B, params))
    pip = pi.copy()
    if b2 > 0.0:
        pip = pip + (g - 1.0) / b2 * (beta @ pi) * beta
    pip = pip - (g / params.c) * beta * kinetic
    return g * precession_vector(pi, E, B, params), precession_vector(pip, Ep, Bp, params)


def rest_frame_covariance_residual(
    pi: np.ndarray,
    s: np.ndarray,
    E: np.ndarray,
    B: np.ndarray,
    params: ParticleParams,
    drop_spin_energy: bool = False,
) -> float:
    """Covariance defect for the boost into the instantaneous rest frame.

    For a chargeless particle the boosted precession vector matches
    gamma * F_pi exactly at linear order; with the spin energy kept in
    the momentum rule the defect is the genuine quadratic remainder.
    """
    beta = v_pi(np.asarray(pi, dtype=float), params) / params.c
    lhs, rhs = boosted_precession_pair(pi, s, E, B, beta, params, drop_spin_energy)
    return float(np.abs(lhs - rhs).max())


def covariance_scaling(
    pi: np.ndarray,
    s: np.ndarray,
    E: np.ndarray,
    B: np.ndarray,
    params: ParticleParams,
    lambdas,
    drop_spin_energy: bool = False,
):
    """Residual-vs-amplitude scan of the rest-frame covariance defect.

    Returns (residuals, slope) with slope fit on log-log axes. Keeping
    the spin energy in the momentum rule makes the defect quadratic in
    the amplitude; the dropped remainder is exactly what the weak-field
    replacement neglects.
    """
    lambdas = list(lambdas)
    if len(lambdas) < 3:
        raise ValueError("need at least 3 amplitudes")
    resid = [
        rest_frame_covariance_residual(pi, s, lam * np.asarray(E, float), lam * np.asarray(B, float), params, drop_spin_energy)
        for lam in lambdas
    ]
    slope = float(np.polyfit(np.log(lambdas), np.log(resid), 1)[0])
    return resid, slope
