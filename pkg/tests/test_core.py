"""Field models, particle parameters and kinematics."""

import numpy as np
import pytest

from spincorr import (
    ParticleParams,
    SinusoidalElectrostatic,
    SinusoidalMagnetostatic,
    SternGerlach,
    Superposition,
    Uniform,
    gamma_pi,
    kinematic_momentum,
    sample_field,
    v_pi,
)

RNG = np.random.default_rng(20260814)


def all_models():
    return [
        Uniform(E0=np.array([0.3, -0.2, 0.5]), B0=np.array([0.1, 0.7, -0.4])),
        SternGerlach(B0=1.0, b=0.1),
        SinusoidalElectrostatic(lam=0.8, L=2.5),
        SinusoidalMagnetostatic(lam=0.6, L=1.7),
        Superposition(
            Uniform(B0=np.array([0.0, 0.0, 1.0])),
            SinusoidalElectrostatic(lam=0.5, L=3.0),
        ),
    ]


def fd_gradient(f, x, h=1e-6):
    """Central-difference gradient of a scalar or vector function."""
    out = []
    for j in range(3):
        dx = np.zeros(3)
        dx[j] = h
        out.append((np.asarray(f(x + dx)) - np.asarray(f(x - dx))) / (2 * h))
    return np.stack(out, axis=-1)


class TestParticleParams:
    def test_moment_identity_enforced(self):
        with pytest.raises(ValueError):
            ParticleParams(m=1.0, e=1.0, gamma_m=2.0, mu_prime=0.0)

    def test_positive_constants_enforced(self):
        with pytest.raises(ValueError):
            ParticleParams(m=-1.0, e=0.0, gamma_m=0.0, mu_prime=0.0)

    def test_two_constructions_agree(self):
        a = ParticleParams.from_moment(m=1.3, e=0.7, mu_prime=0.11)
        b = ParticleParams.from_gyromagnetic(m=1.3, e=0.7, gamma_m=a.gamma_m)
        assert b.mu_prime == pytest.approx(a.mu_prime, rel=1e-14)
        assert b.gamma_m == a.gamma_m and b.mu == pytest.approx(a.mu, rel=1e-15)

    def test_total_moment_split(self):
        p = ParticleParams.from_moment(m=2.0, e=0.5, mu_prime=0.25)
        assert p.mu == pytest.approx(p.e * p.hbar / (2 * p.m * p.c) + p.mu_prime, abs=1e-15)

    def test_dirac_preset_has_g2(self):
        p = ParticleParams.dirac(m=1.5, e=0.9)
        assert p.gamma_m == pytest.approx(p.e / (p.m * p.c), rel=1e-15)
        assert p.mu_prime == 0.0

    def test_neutral_preset(self):
        p = ParticleParams.neutral(mu_prime=0.08)
        assert p.e == 0.0
        assert p.gamma_m == pytest.approx(2 * 0.08, rel=1e-15)


class TestFieldModels:
    def test_uniform_is_constant(self):
        m = Uniform(B0=np.array([0.0, 0.0, 1.0]))
        for _ in range(5):
            s = sample_field(m, RNG.normal(size=3))
            assert np.allclose(s.B, [0, 0, 1])
            assert np.allclose(s.E, 0)
            assert s.div_E == 0.0

    def test_stern_gerlach_at_origin(self):
        s = sample_field(SternGerlach(B0=1.0, b=0.1), np.zeros(3))
        assert np.allclose(s.B, [0, 0, 1])
        assert s.grad_B[0, 0] == pytest.approx(-0.05)
        assert s.grad_B[2, 2] == pytest.approx(0.1)
        assert s.div_B == pytest.approx(0.0, abs=1e-15)

    def test_stern_gerlach_is_curl_free(self):
        for _ in range(20):
            s = sample_field(SternGerlach(B0=1.0, b=0.3), RNG.normal(size=3))
            assert np.allclose(s.curl_B, 0.0, atol=1e-14)

    def test_sinusoidal_electrostatic_quarter_period(self):
        s = sample_field(SinusoidalElectrostatic(lam=1.0, L=1.0), np.array([0.25, 0, 0]))
        assert s.E[0] == pytest.approx(1.0)
        assert s.div_E == pytest.approx(0.0, abs=1e-12)

    def test_sinusoidal_models_are_periodic(self):
        x = RNG.normal(size=3)
        for m in (SinusoidalElectrostatic(0.8, 2.5), SinusoidalMagnetostatic(0.6, 1.7)):
            a, b = sample_field(m, x), sample_field(m, x + np.array([m.L, 0, 0]))
            assert np.allclose(a.E, b.E, atol=1e-12)
            assert np.allclose(a.B, b.B, atol=1e-12)

    def test_divergence_of_b_vanishes_everywhere(self):
        for m in all_models():
            for _ in range(50):
                s = sample_field(m, RNG.normal(scale=2.0, size=3))
                assert abs(s.div_B) < 1e-14

    def test_potentials_reproduce_fields(self):
        # E = -grad(phi) and B = curl(A), from the stored analytic derivatives
        for m in all_models():
            for _ in range(20):
                s = sample_field(m, RNG.normal(size=3))
                assert np.allclose(s.E, -s.grad_phi, atol=1e-13)
                j = s.jac_A
                curl_A = np.array(
                    [j[2, 1] - j[1, 2], j[0, 2] - j[2, 0], j[1, 0] - j[0, 1]]
                )
                assert np.allclose(s.B, curl_A, atol=1e-13)

    def test_derivatives_match_finite_differences(self):
        # independent oracle: central differences at step 1e-6, tolerance 1e-8
        for m in all_models():
            for _ in range(10):
                x = RNG.normal(size=3)
                s = sample_field(m, x)
                fd_phi = fd_gradient(lambda y: sample_field(m, y).phi, x)
                fd_A = fd_gradient(lambda y: sample_field(m, y).A, x)
                fd_E = fd_gradient(lambda y: sample_field(m, y).E, x)
                fd_B = fd_gradient(lambda y: sample_field(m, y).B, x)
                assert np.allclose(s.grad_phi, fd_phi, atol=1e-8)
                assert np.allclose(s.jac_A, fd_A, atol=1e-8)
                assert np.allclose(s.grad_E, fd_E, atol=1e-8)
                assert np.allclose(s.grad_B, fd_B, atol=1e-8)

    def test_superposition_sums_samples(self):
        u = Uniform(B0=np.array([0.0, 0.0, 2.0]))
        g = SternGerlach(B0=0.5, b=0.2)
        x = RNG.normal(size=3)
        s = sample_field(Superposition(u, g), x)
        su, sg = sample_field(u, x), sample_field(g, x)
        assert np.allclose(s.B, su.B + sg.B)
        assert np.allclose(s.jac_A, su.jac_A + sg.jac_A)


class TestKinematics:
    params = ParticleParams.from_moment(m=1.0, e=0.7, mu_prime=0.13)

    def test_zero_potential(self):
        p = RNG.normal(size=3)
        assert np.allclose(kinematic_momentum(p, np.zeros(3), self.params), p)

    def test_exact_cancellation(self):
        pr = self.params
        A = np.array([pr.c / pr.e, 0, 0])
        assert np.allclose(kinematic_momentum(np.array([1.0, 0, 0]), A, pr), 0.0)

    def test_neutral_particle_ignores_potential(self):
        pr = ParticleParams.neutral(mu_prime=0.1)
        p, A = RNG.normal(size=3), RNG.normal(size=3)
        assert np.allclose(kinematic_momentum(p, A, pr), p)

    def test_gamma_rest(self):
        assert gamma_pi(np.zeros(3), self.params) == 1.0

    def test_gamma_sqrt3(self):
        pi = np.array([0, 0, np.sqrt(3.0)]) * self.params.mc
        assert gamma_pi(pi, self.params) == pytest.approx(2.0, rel=1e-15)

    def test_gamma_from_velocity_roundtrip(self):
        pr = self.params
        for _ in range(100):
            pi = RNG.normal(scale=pr.mc, size=3)
            v = v_pi(pi, pr)
            beta2 = (v @ v) / pr.c ** 2
            assert gamma_pi(pi, pr) == pytest.approx(1.0 / np.sqrt(1.0 - beta2), rel=1e-14)

    def test_gamma_at_least_one(self):
        pr = self.params
        for _ in range(100):
            pi = RNG.normal(scale=3 * pr.mc, size=3)
            g = gamma_pi(pi, pr)
            assert g >= 1.0
            assert (g == 1.0) == bool(np.all(pi == 0.0))

    def test_v_pi_magnitude(self):
        pr = self.params
        pi = np.array([np.sqrt(3.0) * pr.mc, 0, 0])
        assert np.linalg.norm(v_pi(pi, pr)) == pytest.approx(np.sqrt(3) / 2 * pr.c, rel=1e-15)

    def test_momentum_velocity_inverse(self):
        pr = self.params
        for _ in range(20):
            pi = RNG.normal(scale=pr.mc, size=3)
            v = v_pi(pi, pr)
            assert np.allclose(pr.m * gamma_pi(pi, pr) * v, pi, rtol=1e-14)
