import numpy as np
import pytest

from entdyn import (
    AmplitudePair,
    ReservoirSpectrum,
    XMatrix,
    closed_form_pair,
    rho_q1q2,
    rho_q1r1,
    rho_q1r2,
    rho_r1r2,
    validate_density_matrix,
)
from entdyn.states import partition_state, Partition

ALL_BUILDERS = (rho_q1q2, rho_r1r2, rho_q1r1, rho_q1r2)

INITIAL = AmplitudePair(c0=1.0, c_tilde=0.0, t=0.0)
DECAYED = AmplitudePair(c0=0.0, c_tilde=1.0, t=50.0)


def random_pair(rng, t=1.0):
    theta = rng.random() * np.pi / 2.0
    sign = 1.0 if rng.random() < 0.5 else -1.0
    return AmplitudePair(c0=sign * np.cos(theta), c_tilde=np.sin(theta), t=t)


class TestQubitPairState:
    @pytest.mark.parametrize("alpha", [0.0, 0.2, 1.0 / 3.0, 0.35, 0.6, 1.0])
    def test_initial_state_block(self, alpha):
        m = rho_q1q2(alpha, INITIAL)
        assert m.a == alpha / 3.0
        assert m.b == m.c == 1.0 / 3.0
        assert m.z == (1.0 / 3.0) + 0.0j
        assert m.d == (1.0 - alpha) / 3.0
        assert m.w == 0.0j

    def test_full_decay(self):
        m = rho_q1q2(0.35, DECAYED)
        assert (m.a, m.b, m.c) == (0.0, 0.0, 0.0)
        assert m.z == 0.0j
        assert m.d == 1.0

    def test_trace_is_one(self, rng):
        for _ in range(200):
            m = rho_q1q2(rng.random(), random_pair(rng))
            assert abs(m.trace() - 1.0) < 1e-12


class TestReservoirPairState:
    def test_vacuum_start(self):
        m = rho_r1r2(0.7, INITIAL)
        assert (m.a, m.b, m.c) == (0.0, 0.0, 0.0)
        assert m.z == 0.0j
        assert m.d == 1.0

    def test_swap_identity_exact(self, rng):
        # exchanging the amplitudes maps one pair reduction onto the other
        for _ in range(300):
            theta = rng.random() * np.pi / 2.0
            x, y = np.cos(theta), np.sin(theta)
            alpha = rng.random()
            direct = rho_r1r2(alpha, AmplitudePair(c0=x, c_tilde=y, t=1.0))
            swapped = rho_q1q2(alpha, AmplitudePair(c0=y, c_tilde=x, t=1.0))
            assert direct == swapped

    def test_trace_is_one(self, rng):
        for _ in range(200):
            m = rho_r1r2(rng.random(), random_pair(rng))
            assert abs(m.trace() - 1.0) < 1e-12


class TestQubitOwnReservoirState:
    def test_initial_entries(self):
        alpha = 0.4
        m = rho_q1r1(alpha, INITIAL)
        assert m.a == 0.0
        assert m.b == (1.0 + alpha) / 3.0
        assert m.c == 0.0
        assert m.z == 0.0j
        assert m.d == (2.0 - alpha) / 3.0
        assert abs(m.trace() - 1.0) < 1e-12

    def test_coherence_block_rank_deficient(self, rng):
        for _ in range(300):
            m = rho_q1r1(rng.random(), random_pair(rng))
            assert abs(abs(m.z) ** 2 - m.b * m.c) < 1e-15

    def test_trace_is_one(self, rng):
        for _ in range(200):
            m = rho_q1r1(rng.random(), random_pair(rng))
            assert abs(m.trace() - 1.0) < 1e-12


class TestQubitOtherReservoirState:
    def test_initial_entries(self):
        alpha = 0.25
        m = rho_q1r2(alpha, INITIAL)
        assert m.a == 0.0
        assert m.b == (1.0 + alpha) / 3.0
        assert m.c == 0.0
        assert m.z == 0.0j
        assert m.d == (2.0 - alpha) / 3.0

    def test_trace_is_one(self, rng):
        for _ in range(300):
            m = rho_q1r2(rng.random(), random_pair(rng))
            assert abs(m.trace() - 1.0) < 1e-12

    def test_alpha_zero_keeps_coherence(self, rng):
        # with alpha = 0 the outer populations vanish, so any nonzero
        # c0 * c_tilde leaves the partition entangled
        from entdyn import concurrence_x

        pair = AmplitudePair(c0=0.6, c_tilde=0.8, t=1.0)
        m = rho_q1r2(0.0, pair)
        assert m.a == 0.0
        assert concurrence_x(m) == pytest.approx(2.0 * 0.6 * 0.8 / 3.0, rel=1e-12)


class TestSignInvariance:
    def test_sign_flip_moves_only_z(self, rng):
        for _ in range(100):
            theta = rng.random() * np.pi / 2.0
            alpha = rng.random()
            up = AmplitudePair(c0=np.cos(theta), c_tilde=np.sin(theta), t=1.0)
            down = AmplitudePair(c0=-np.cos(theta), c_tilde=np.sin(theta), t=1.0)
            for builder in ALL_BUILDERS:
                m_up, m_down = builder(alpha, up), builder(alpha, down)
                assert (m_up.a, m_up.b, m_up.c, m_up.d, m_up.w) == (
                    m_down.a, m_down.b, m_down.c, m_down.d, m_down.w
                )
                assert abs(m_up.z) == abs(m_down.z)


class TestValidation:
    def test_all_builders_valid_at_random_points(self, rng):
        spectra = [ReservoirSpectrum(gamma=g) for g in (0.05, 0.1, 2.0, 5.0)]
        for i in range(2500):
            s = spectra[i % len(spectra)]
            pair = closed_form_pair(s, float(rng.random() * 15.0))
            alpha = float(rng.random())
            for builder in ALL_BUILDERS:
                report = validate_density_matrix(builder(alpha, pair))
                assert report.ok, report.violations

    def test_constructed_violation(self):
        bad = XMatrix(a=0.0, b=0.5, c=0.5, d=0.0, z=0.6 + 0.0j, w=0.0j)
        report = validate_density_matrix(bad)
        assert not report.ok
        assert any("|z|" in v for v in report.violations)

    def test_maximally_mixed_valid(self):
        m = XMatrix(a=0.25, b=0.25, c=0.25, d=0.25, z=0.0j, w=0.0j)
        assert validate_density_matrix(m).ok

    def test_trace_violation_reported(self):
        m = XMatrix(a=0.5, b=0.5, c=0.5, d=0.5, z=0.0j, w=0.0j)
        report = validate_density_matrix(m)
        assert any("trace" in v for v in report.violations)

    def test_negative_diagonal_reported(self):
        m = XMatrix(a=-0.1, b=0.55, c=0.55, d=0.0, z=0.0j, w=0.0j)
        report = validate_density_matrix(m)
        assert any("negative" in v for v in report.violations)

    @pytest.mark.parametrize("alpha", [-0.01, 1.01, 2.0])
    def test_alpha_range_enforced(self, alpha):
        for builder in ALL_BUILDERS:
            with pytest.raises(ValueError):
                builder(alpha, INITIAL)


class TestXMatrix:
    def test_dense_form(self):
        m = XMatrix(a=0.1, b=0.2, c=0.3, d=0.4, z=0.05 + 0.02j, w=0.01 - 0.03j)
        dense = m.to_matrix()
        assert dense.shape == (4, 4)
        assert np.allclose(dense, dense.conj().T)
        assert dense[1, 2] == 0.05 + 0.02j
        assert dense[2, 1] == 0.05 - 0.02j
        assert dense[0, 3] == 0.01 - 0.03j
        assert np.trace(dense) == pytest.approx(1.0)

    def test_partition_dispatch(self):
        pair = AmplitudePair(c0=0.6, c_tilde=0.8, t=2.0)
        assert partition_state(Partition.Q1Q2, 0.5, pair) == rho_q1q2(0.5, pair)
        assert partition_state(Partition.Q1R2, 0.5, pair) == rho_q1r2(0.5, pair)
