"""Shared state constructors for the test suite."""

import numpy as np

from qweight import DimensionProfile, StateVector


def bell_state() -> StateVector:
    amps = np.zeros(4, dtype=np.complex128)
    amps[0] = amps[3] = 1 / np.sqrt(2)
    return StateVector(DimensionProfile((2, 2)), amps)


def ghz_state(n: int = 3) -> StateVector:
    amps = np.zeros(2 ** n, dtype=np.complex128)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return StateVector(DimensionProfile((2,) * n), amps)


def ring_graph_state(n: int = 5) -> StateVector:
    """CZ along every edge of the n-cycle applied to |+...+>."""
    amps = np.empty(2 ** n, dtype=np.complex128)
    for idx in range(2 ** n):
        bits = [(idx >> (n - 1 - i)) & 1 for i in range(n)]
        sign = 1
        for i in range(n):
            sign *= (-1) ** (bits[i] * bits[(i + 1) % n])
        amps[idx] = sign
    amps /= np.sqrt(2 ** n)
    return StateVector(DimensionProfile((2,) * n), amps)


def random_state(rng: np.random.Generator, dims) -> StateVector:
    profile = DimensionProfile(tuple(dims))
    raw = rng.normal(size=profile.total_dim) + 1j * rng.normal(size=profile.total_dim)
    return StateVector(profile, raw / np.linalg.norm(raw))


def random_hermitian(rng: np.random.Generator, dims) -> np.ndarray:
    profile = DimensionProfile(tuple(dims))
    g = rng.normal(size=(profile.total_dim,) * 2) + 1j * rng.normal(
        size=(profile.total_dim,) * 2
    )
    return (g + g.conj().T) / 2


def random_psd(rng: np.random.Generator, dims) -> np.ndarray:
    profile = DimensionProfile(tuple(dims))
    g = rng.normal(size=(profile.total_dim,) * 2) + 1j * rng.normal(
        size=(profile.total_dim,) * 2
    )
    m = g @ g.conj().T
    return m / np.trace(m).real
