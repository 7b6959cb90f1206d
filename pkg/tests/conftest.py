"""Shared fixtures and independent dense oracles.

Everything here is built from first principles (explicit loops, eigenvalue
exponentials, hand-indexed shift matrices) so that library code paths are
checked against constructions that do not share their implementation.
"""

from __future__ import annotations

import numpy as np
import pytest

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def expm_unitary(hermitian: np.ndarray) -> np.ndarray:
    """exp(i * H) for Hermitian H via eigendecomposition."""
    w, v = np.linalg.eigh(hermitian)
    return (v * np.exp(1j * w)) @ v.conj().T


def idx(coin: int, x: int, half_width: int) -> int:
    """Basis index of |coin> ⊗ |x> with coin-major layout."""
    return coin * (2 * half_width + 1) + (x + half_width)


def dense_shift_minus(half_width: int) -> np.ndarray:
    """Left mover to x-1 (rows off the lattice dropped), right mover fixed."""
    n = 2 * (2 * half_width + 1)
    out = np.zeros((n, n), dtype=complex)
    for x in range(-half_width, half_width + 1):
        if x - 1 >= -half_width:
            out[idx(0, x - 1, half_width), idx(0, x, half_width)] = 1.0
        out[idx(1, x, half_width), idx(1, x, half_width)] = 1.0
    return out


def dense_shift_plus(half_width: int) -> np.ndarray:
    n = 2 * (2 * half_width + 1)
    out = np.zeros((n, n), dtype=complex)
    for x in range(-half_width, half_width + 1):
        out[idx(0, x, half_width), idx(0, x, half_width)] = 1.0
        if x + 1 <= half_width:
            out[idx(1, x + 1, half_width), idx(1, x, half_width)] = 1.0
    return out


def dense_shift_full(half_width: int) -> np.ndarray:
    n = 2 * (2 * half_width + 1)
    out = np.zeros((n, n), dtype=complex)
    for x in range(-half_width, half_width + 1):
        if x - 1 >= -half_width:
            out[idx(0, x - 1, half_width), idx(0, x, half_width)] = 1.0
        if x + 1 <= half_width:
            out[idx(1, x + 1, half_width), idx(1, x, half_width)] = 1.0
    return out


def dense_coin(mats, half_width: int) -> np.ndarray:
    """Sitewise coin action: mats is one 2x2 or a list indexed by x + half_width."""
    n_sites = 2 * half_width + 1
    dim = 2 * n_sites
    mats = np.asarray(mats, dtype=complex)
    out = np.zeros((dim, dim), dtype=complex)
    for k in range(n_sites):
        x = k - half_width
        m = mats if mats.ndim == 2 else mats[k]
        for i in range(2):
            for j in range(2):
                out[idx(i, x, half_width), idx(j, x, half_width)] = m[i, j]
    return out


def random_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(2) matrix [[a, b], [-conj(b), conj(a)]]."""
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    a = v[0] + 1j * v[1]
    b = v[2] + 1j * v[3]
    return np.array([[a, b], [-np.conj(b), np.conj(a)]], dtype=complex)


def random_u2(rng: np.random.Generator) -> np.ndarray:
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)) * random_su2(rng)


def state_vector(state) -> np.ndarray:
    """Flatten a WalkerState into the coin-major dense basis."""
    return np.asarray(state.amps).reshape(-1)
