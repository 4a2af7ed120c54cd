"""Shared test fixtures and independent numeric oracles.

The oracles below are deliberately built on scipy/numpy matrix exponentials
and direct formula evaluation, independent of the package's closed-form
construction paths, so tests check against a second route to the same
numbers.
"""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from pulsenest import Frame, PhaseSequence

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def sigma_phi(phi: float) -> np.ndarray:
    return math.cos(phi) * SX + math.sin(phi) * SY


def oracle_rotation(theta: float, phi: float) -> np.ndarray:
    """Rotation propagator via scipy's matrix exponential."""
    return expm(-1j * (theta / 2) * sigma_phi(phi))


def oracle_pulse(theta: float, phi: float, eps: float, f: float) -> np.ndarray:
    gen = (theta / 2) * ((1 + eps) * sigma_phi(phi) + f * SZ)
    return expm(-1j * gen)


def oracle_sequence(phases, eps: float, f: float = 0.0) -> np.ndarray:
    out = I2
    for p in phases:
        out = oracle_pulse(math.pi, float(p), eps, f) @ out
    return out


def oracle_fidelity(u: np.ndarray, v: np.ndarray) -> float:
    return abs(np.trace(u.conj().T @ v)) / 2


def max_diff(unitary, array: np.ndarray) -> float:
    """Largest entrywise deviation of a Unitary2 from a numpy oracle matrix."""
    return float(np.max(np.abs(unitary.to_array() - array)))


def random_antisymmetric(rng, length: int) -> PhaseSequence:
    """Random odd-length antisymmetric applied-frame sequence."""
    assert length % 2 == 1
    half = rng.uniform(-math.pi, math.pi, size=length // 2)
    phases = list(half) + [0.0] + [-p for p in half[::-1]]
    return PhaseSequence(tuple(phases), Frame.APPLIED, "antisym")


def random_symmetric_toggling(rng, length: int) -> PhaseSequence:
    half = rng.uniform(-math.pi, math.pi, size=(length + 1) // 2)
    phases = list(half) + list(half[: length // 2][::-1])
    return PhaseSequence(tuple(phases), Frame.TOGGLING, "sym-toggling")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
