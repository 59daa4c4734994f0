"""The verification battery: every check the result records can report.

Each function runs one self-contained experiment at a pinned preset and
returns a CheckResult whose name is stable across the CLI, the JSON
artifacts and the acceptance suite. Tolerances live here, next to the
experiment that owns them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .classical import (
    IntegratorSpec,
    bmt_consistency_residual,
    covariance_scaling,
    eom_rhs,
    h_total,
    integrate,
)
from .fields import SternGerlach, Uniform, sample_field
from .kinematics import PhaseState, gamma_pi, kinematic_momentum
from .params import ParticleParams
from . import qfw

DEFAULT_SEED = 20260814
DEFAULT_LAMBDAS = (1e-2, 1e-3, 1e-4)

# canonical particle: anomalous charged dipole used by the orbit checks
CANONICAL = ParticleParams.from_moment(m=1.0, e=0.7, mu_prime=0.13)
NEUTRAL_SLOW = ParticleParams.neutral(mu_prime=0.11)


def _jsonable(v):
    """Strip numpy scalar types so the records serialize canonically."""
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class CheckResult:
    name: str
    value: object
    tolerance: object
    passed: bool
    expected_fail: bool = False
    detail: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "value": _jsonable(self.value),
            "tolerance": _jsonable(self.tolerance),
            "pass": bool(self.passed),
            "expected_fail": bool(self.expected_fail),
            "detail": _jsonable(self.detail),
        }


CHECK_INFO = {
    "larmor_limit": "spin at rest in a uniform B rotates by the analytic angle",
    "conservation": "|s| and H stay constant along the gradient-trap orbit",
    "pitch_lock": "g = 2 freezes the longitudinal polarization in a uniform B",
    "bmt_consistency": "covariant precession matches at stencil order; the "
    "gradient four-force term is load-bearing",
    "gradient_oracle": "analytic equations of motion equal finite differences "
    "of the Hamiltonian",
    "case_equality": "operator square-root series equals the claimed "
    "Weyl-ordered closed form, exactly",
    "ordering_identity": "the symmetrized triple product matches the "
    "Weyl-ordered magnetic coupling modulo reordering",
    "darwin_anchors": "contact-term coefficients evaluate exactly for the "
    "pure-charge and pure-moment particles",
    "spectrum_preservation": "the exact transform is isospectral and "
    "block-diagonal",
    "correspondence_scaling": "transform-vs-classical-image residual shrinks "
    "quadratically in the field amplitude",
    "negative_result": "the flat contact candidate underperforms the "
    "velocity-weighted form across the spectrum",
    "parity": "both Hamiltonians commute with parity",
    "boost_covariance": "boosted precession matches the single-factor form "
    "to second order in the amplitude",
}


def check_larmor_limit() -> CheckResult:
    B0 = 1.0
    model = Uniform(B0=np.array([0.0, 0.0, B0]))
    rate = CANONICAL.gamma_m * B0
    T = 2.0 * math.pi / rate
    s0 = np.array([1.0, 0.0, 0.25])
    traj = integrate(
        PhaseState(np.zeros(3), np.zeros(3), s0),
        model,
        CANONICAL,
        IntegratorSpec(step=T / 1000),
        T,
    )
    # accumulate the in-plane rotation angle, winding included
    ang = np.unwrap(np.arctan2(traj.s[:, 1], traj.s[:, 0]))
    theta = abs(ang[-1] - ang[0])
    rel = abs(theta - rate * T) / (rate * T)
    return CheckResult("larmor_limit", rel, 1e-6, rel < 1e-6)


def check_conservation() -> CheckResult:
    model = SternGerlach(B0=5.0, b=0.01)
    st = PhaseState(
        np.array([0.1, 0.2, -0.1]),
        np.array([0.3, -0.2, 0.25]),
        np.array([0.3, 0.1, 0.35]),
    )
    dt = 2e-4
    n_spin, n_energy = 100_000, 10_000
    traj = integrate(st, model, CANONICAL, IntegratorSpec(step=dt), n_spin * dt)
    spin_drift = float(np.abs(traj.spin_drift).max())
    h = traj.h_total[: n_energy + 1]
    energy_drift = float(np.abs(h - h[0]).max() / abs(h[0]))
    value = {"spin_drift": spin_drift, "energy_drift": energy_drift}
    tol = {"spin_drift": 1e-9, "energy_drift": 1e-8}
    return CheckResult(
        "conservation",
        value,
        tol,
        spin_drift < tol["spin_drift"] and energy_drift < tol["energy_drift"],
        detail={"steps": n_spin, "energy_steps": n_energy, "dt": dt},
    )


def check_pitch_lock() -> CheckResult:
    pr = ParticleParams.dirac(m=1.0, e=1.0)
    B0 = 1.0
    model = Uniform(B0=np.array([0.0, 0.0, B0]))
    p0 = np.array([pr.mc, 0.0, 0.0])
    g = gamma_pi(p0, pr)
    Tc = 2.0 * math.pi * g * pr.mc / (pr.e * B0)
    s0 = np.array([0.48, 0.36, 0.0])  # in the orbital plane: s.B = 0
    traj = integrate(
        PhaseState(np.zeros(3), p0, s0), model, pr, IntegratorSpec(step=Tc / 2000), 10 * Tc
    )
    pi = np.array(
        [kinematic_momentum(p, sample_field(model, x).A, pr) for x, p in zip(traj.x, traj.p)]
    )
    pitch = np.einsum("ij,ij->i", traj.s, pi) / np.linalg.norm(pi, axis=1)
    dev = float(np.abs(pitch - pitch[0]).max())
    return CheckResult("pitch_lock", dev, 1e-8, dev < 1e-8, detail={"periods": 10})


def check_bmt_consistency() -> CheckResult:
    model = SternGerlach(B0=5.0, b=0.01)
    p0 = np.array([1e-4, 3e-5, -2e-5]) * NEUTRAL_SLOW.mc
    s0 = np.array([0.2, 0.1, 0.45])
    T = 4.0
    steps = (10, 20, 40)
    resids = []
    for n in steps:
        traj = integrate(
            PhaseState(np.zeros(3), p0, s0),
            model,
            NEUTRAL_SLOW,
            IntegratorSpec(step=T / n),
            T,
        )
        resids.append(bmt_consistency_residual(traj, model, NEUTRAL_SLOW))
    order = float(np.polyfit(np.log([T / n for n in steps]), np.log(resids), 1)[0])
    traj = integrate(
        PhaseState(np.zeros(3), p0, s0),
        model,
        NEUTRAL_SLOW,
        IntegratorSpec(step=T / steps[-1]),
        T,
    )
    with_f = bmt_consistency_residual(traj, model, NEUTRAL_SLOW, include_gradient_force=True)
    without_f = bmt_consistency_residual(traj, model, NEUTRAL_SLOW, include_gradient_force=False)
    ratio = float(without_f / with_f)
    value = {"stencil_order": order, "f_term_ratio": ratio}
    tol = {"stencil_order": [3.7, 4.3], "f_term_ratio_min": 10.0}
    passed = 3.7 <= order <= 4.3 and ratio >= 10.0
    return CheckResult(
        "bmt_consistency", value, tol, passed, detail={"residuals": [float(r) for r in resids]}
    )


def check_gradient_oracle(seed: int = DEFAULT_SEED) -> CheckResult:
    from .fields import SinusoidalElectrostatic, Superposition

    model = Superposition(
        SternGerlach(B0=1.0, b=0.3), SinusoidalElectrostatic(lam=0.4, L=2.0)
    )
    rng = np.random.default_rng(seed)
    h = 1e-6
    worst = 0.0
    for _ in range(1000):
        st = PhaseState(rng.normal(size=3), rng.normal(size=3), rng.normal(size=3))
        dx, dp, ds = eom_rhs(st, model, CANONICAL)

        def H(x=st.x, p=st.p, s=st.s):
            return h_total(PhaseState(x, p, s), model, CANONICAL)

        grad_s = np.zeros(3)
        for j in range(3):
            e = np.zeros(3)
            e[j] = h
            fd_p = (H(p=st.p + e) - H(p=st.p - e)) / (2 * h)
            fd_x = (H(x=st.x + e) - H(x=st.x - e)) / (2 * h)
            grad_s[j] = (H(s=st.s + e) - H(s=st.s - e)) / (2 * h)
            worst = max(worst, abs(dx[j] - fd_p), abs(dp[j] + fd_x))
        # spin flows against its gradient: ds/dt = dH/ds x s
        worst = max(worst, float(np.abs(ds - np.cross(grad_s, st.s)).max()))
    return CheckResult(
        "gradient_oracle", worst, 1e-7, worst < 1e-7, detail={"states": 1000, "seed": seed}
    )


def check_case_equality(order: int = 8) -> CheckResult:
    from .opalg.identities import case_algebra, verify_case

    residual_terms = {}
    ok_all = True
    for case in ("I", "II"):
        alg = case_algebra(case)
        ok, residual = verify_case(case, order, alg)
        ok_all = ok_all and ok
        residual_terms[f"case_{case.lower()}_residual_terms"] = len(residual.terms)
    return CheckResult(
        "case_equality", residual_terms, 0, ok_all, detail={"order": order}
    )


def check_ordering_identity(seed: int = DEFAULT_SEED) -> CheckResult:
    from .opalg.identities import matchup_report

    rep = matchup_report(trials=8, seed=seed)
    value = {
        "commuting_identity": rep["commuting_identity"],
        "homogeneous_exact": rep["homogeneous_exact"],
        "epsilon_expansion": rep["epsilon_expansion"],
        "defect_decomposition": rep["defect_decomposition"],
        "shadow_zero": rep["shadow_zero"],
    }
    return CheckResult(
        "ordering_identity",
        value,
        0,
        bool(rep["ok"]),
        detail={"defect_coefficients": [str(c) for c in rep["defect_coefficients"]]},
    )


def check_darwin_anchors() -> CheckResult:
    m, e = Fraction(3, 2), Fraction(5, 7)
    dirac_val = qfw.darwin_coefficient_exact(m, e, gamma_m=e / m)
    dirac_ok = dirac_val == e / (8 * m ** 2)
    mu_p = Fraction(4, 11)
    neutral_val = qfw.darwin_coefficient_exact(Fraction(2), 0, gamma_m=2 * mu_p)
    neutral_ok = neutral_val == -mu_p / 4
    value = {"dirac": float(dirac_val), "neutral": float(neutral_val)}
    return CheckResult(
        "darwin_anchors",
        value,
        0,
        dirac_ok and neutral_ok,
        detail={"dirac_exact": str(dirac_val), "neutral_exact": str(neutral_val)},
    )


def _qfw_defaults(case):
    lat = qfw.default_lattice(case)
    return lat, qfw.default_params(case, lat)


def check_spectrum_preservation() -> CheckResult:
    worst_spec, worst_block = 0.0, 0.0
    for case in (qfw.CASE_I, qfw.CASE_II):
        lat, par = _qfw_defaults(case)
        for lam in (1e-2, 1e-3):
            H = qfw.build_hamiltonian(case, lat, lam, par)
            Hfw = qfw.eriksen_fw(H)
            a = np.sort(np.linalg.eigvalsh(H.matrix))
            b = np.sort(np.linalg.eigvalsh(Hfw.matrix))
            worst_spec = max(worst_spec, float(np.abs(a - b).max()))
            beta = H.aux["beta"]
            worst_block = max(
                worst_block, float(np.abs(beta @ Hfw.matrix @ beta - Hfw.matrix).max())
            )
    value = {"spectrum": worst_spec, "block_diagonality": worst_block}
    tol = {"spectrum": 1e-10, "block_diagonality": 1e-11}
    return CheckResult(
        "spectrum_preservation",
        value,
        tol,
        worst_spec < tol["spectrum"] and worst_block < tol["block_diagonality"],
    )


def check_correspondence_scaling(
    lambdas=DEFAULT_LAMBDAS, profile: str = "default"
) -> CheckResult:
    lat1, par1 = _qfw_defaults(qfw.CASE_I)
    lat2, par2 = _qfw_defaults(qfw.CASE_II)
    _, slope_i = qfw.residual_scaling(qfw.CASE_I, lat1, par1, lambdas)
    drop_darwin = profile == "negative-result"
    _, slope_ii = qfw.residual_scaling(
        qfw.CASE_II, lat2, par2, lambdas, include_darwin=not drop_darwin
    )
    value = {"case_i_slope": slope_i, "case_ii_slope": slope_ii}
    target_ii = 1.0 if drop_darwin else 2.0
    tol = {"case_i_slope": [1.9, 2.1], "case_ii_slope": [target_ii - 0.1, target_ii + 0.1]}
    passed = abs(slope_i - 2.0) <= 0.1 and abs(slope_ii - target_ii) <= 0.1
    return CheckResult(
        "correspondence_scaling",
        value,
        tol,
        passed,
        expected_fail=drop_darwin,
        detail={"lambdas": list(lambdas), "darwin_included": not drop_darwin},
    )


def check_negative_result(lambdas=DEFAULT_LAMBDAS) -> CheckResult:
    lat, par = _qfw_defaults(qfw.CASE_II)
    rep = qfw.darwin_vs_classical_hd(lat, par, lambdas)
    value = {
        "gap_over_darwin": rep["gap_over_darwin"],
        "required_gap": rep["required_gap"],
        "fit_rel_dev": rep["fit_rel_dev"],
        "slope_with_darwin": rep["slope_with_darwin"],
        "slope_without_darwin": rep["slope_without_darwin"],
    }
    passed = (
        rep["candidate_underperforms"]
        and rep["nonrel_agrees"]
        and abs(rep["slope_with_darwin"] - 2.0) <= 0.1
        and abs(rep["slope_without_darwin"] - 1.0) <= 0.1
    )
    tol = {"gap_min": rep["required_gap"], "nonrel_form_max": 1e-3}
    return CheckResult("negative_result", value, tol, passed)


def check_parity() -> CheckResult:
    worst = 0.0
    per_case = {}
    for case in (qfw.CASE_I, qfw.CASE_II):
        lat, par = _qfw_defaults(case)
        dev_h, dev_hp = qfw.parity_check(case, lat, 1e-2, par)
        per_case[case] = {"H": dev_h, "H_transformed": dev_hp}
        worst = max(worst, dev_h, dev_hp)
    return CheckResult("parity", worst, 1e-12, worst < 1e-12, detail=per_case)


def check_boost_covariance(
    seed: int = DEFAULT_SEED, lambdas=DEFAULT_LAMBDAS, beta_max: float = 0.5
) -> CheckResult:
    pr = ParticleParams.neutral(mu_prime=0.08)
    rng = np.random.default_rng(seed)
    slopes = []
    for _ in range(3):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        beta_mag = rng.uniform(0.1, beta_max)
        pi = direction * beta_mag / math.sqrt(1.0 - beta_mag ** 2) * pr.mc
        s, E, B = rng.normal(size=3), rng.normal(size=3), rng.normal(size=3)
        _, slope = covariance_scaling(pi, s, E, B, pr, list(lambdas))
        slopes.append(float(slope))
    value = {"slopes": slopes}
    passed = all(abs(s - 2.0) <= 0.1 for s in slopes)
    return CheckResult(
        "boost_covariance", value, {"slope": [1.9, 2.1]}, passed, detail={"seed": seed}
    )


MODE_CHECKS = {
    "simulate": (
        "larmor_limit",
        "conservation",
        "pitch_lock",
        "bmt_consistency",
        "gradient_oracle",
    ),
    "boost": ("boost_covariance",),
    "verify-algebra": ("case_equality", "ordering_identity"),
    "verify-fw": (
        "darwin_anchors",
        "spectrum_preservation",
        "correspondence_scaling",
        "negative_result",
        "parity",
    ),
}


def run_checks(
    mode: str, seed: int, order: int, lambdas, profile: str, beta_max: float = 0.5
) -> list:
    """Execute the checks a mode owns, in their declared order."""
    out = []
    for name in MODE_CHECKS[mode]:
        if name == "gradient_oracle":
            out.append(check_gradient_oracle(seed))
        elif name == "case_equality":
            out.append(check_case_equality(order))
        elif name == "ordering_identity":
            out.append(check_ordering_identity(seed))
        elif name == "correspondence_scaling":
            out.append(check_correspondence_scaling(lambdas, profile))
        elif name == "negative_result":
            out.append(check_negative_result(lambdas))
        elif name == "boost_covariance":
            out.append(check_boost_covariance(seed, lambdas, beta_max))
        else:
            out.append(globals()[f"check_{name}"]())
    return out
