"""Rotating-frame Hamiltonian and master-equation generator.

The density matrix is vectorized row-major::

    vec(rho) = (rho11, rho12, rho13, rho21, rho22, rho23, rho31, rho32, rho33)

so that ``vec(A @ rho @ B) = kron(A, B.T) @ vec(rho)``.  Both the
commutator and the dissipator carry a factor 2pi, which makes the
generator act in rad/us when all inputs are in MHz.
"""

from __future__ import annotations

import numpy as np

from .model import AtomParams, DriveConfig

TWO_PI = 2 * np.pi
DIM = 3

#: Positions of rho11, rho22, rho33 in the vectorized state.
DIAG_INDICES = (0, 4, 8)


def vec_index(i: int, j: int) -> int:
    """Position of rho_ij (0-based levels) in the vectorized state."""
    return DIM * i + j


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(DIM * DIM)


def unvec(v: np.ndarray) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape(DIM, DIM)


def sigma(i: int, j: int) -> np.ndarray:
    """Transition operator |i><j| with 1-based level labels."""
    s = np.zeros((DIM, DIM), dtype=complex)
    s[i - 1, j - 1] = 1.0
    return s


def build_hamiltonian(drives: DriveConfig) -> np.ndarray:
    """H / (2 pi hbar) in MHz.

    ``-Delta21 s22 - Delta31 s33 - (Omega31 s31 + Omega32 s32 + Omega21 s21 + h.c.) / 2``
    with ``Delta21 = Delta31 - Delta32``.  For a resonant 3-1 drive and no
    probe the 2-2 entry is ``Delta32``.
    """
    h = np.zeros((DIM, DIM), dtype=complex)
    h[1, 1] = -drives.detuning_21
    h[2, 2] = -drives.detuning_31
    for (i, j), rabi in (((2, 0), drives.rabi_31), ((2, 1), drives.rabi_32),
                         ((1, 0), drives.rabi_21)):
        h[i, j] = -0.5 * rabi.value
        h[j, i] = np.conj(h[i, j])
    return h


def commutator_superop(h: np.ndarray) -> np.ndarray:
    """Matrix of ``rho -> -i 2pi [h, rho]`` on the vectorized state."""
    eye = np.eye(DIM)
    return -1j * TWO_PI * (np.kron(h, eye) - np.kron(eye, h.T))


def build_dissipator(params: AtomParams) -> np.ndarray:
    """Rate-form dissipator (9x9, rad/us).

    Populations: ``d11 = G31 r33 + G21 r22``, ``d22 = G32 r33 - G21 r22``,
    ``d33 = -(G31 + G32) r33``; every coherence decays at its own
    ``gamma_ij``.  The coherence rates are independent inputs, not derived
    from the population rates.
    """
    d = np.zeros((DIM * DIM, DIM * DIM))
    p11, p22, p33 = DIAG_INDICES
    d[p11, p33] += params.gamma_pop_31
    d[p11, p22] += params.gamma_pop_21
    d[p22, p33] += params.gamma_pop_32
    d[p22, p22] -= params.gamma_pop_21
    d[p33, p33] -= params.gamma_pop_31 + params.gamma_pop_32
    for (i, j), g in (((0, 1), params.gamma_coh_12), ((0, 2), params.gamma_coh_13),
                      ((1, 2), params.gamma_coh_23)):
        d[vec_index(i, j), vec_index(i, j)] -= g
        d[vec_index(j, i), vec_index(j, i)] -= g
    return TWO_PI * d.astype(complex)


def build_liouvillian(params: AtomParams, drives: DriveConfig) -> np.ndarray:
    """Full generator ``M`` with ``d vec(rho)/dt = M vec(rho)`` (t in microseconds)."""
    return commutator_superop(build_hamiltonian(drives)) + build_dissipator(params)


def apply(m: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Action of a superoperator on a 3x3 matrix."""
    return unvec(m @ vec(rho))
