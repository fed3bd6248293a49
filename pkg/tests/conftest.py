import numpy as np
import pytest

from entdyn import ReservoirSpectrum


@pytest.fixture(scope="session")
def s_nonmarkov() -> ReservoirSpectrum:
    """Long-memory reservoir, gamma = 0.1 gamma0."""
    return ReservoirSpectrum(gamma0=1.0, gamma=0.1, omega0=100.0)


@pytest.fixture(scope="session")
def s_deep() -> ReservoirSpectrum:
    """Strong-coupling reservoir, gamma = 0.05 gamma0."""
    return ReservoirSpectrum(gamma0=1.0, gamma=0.05, omega0=100.0)


@pytest.fixture(scope="session")
def s_markov() -> ReservoirSpectrum:
    """Memoryless reservoir, gamma = 5 gamma0."""
    return ReservoirSpectrum(gamma0=1.0, gamma=5.0, omega0=100.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)


def pairs_to_arrays(pairs):
    times = np.array([p.t for p in pairs])
    c0 = np.array([p.c0 for p in pairs])
    c_tilde = np.array([p.c_tilde for p in pairs])
    return times, c0, c_tilde
