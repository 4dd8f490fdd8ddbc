"""Pure-numpy implementations of the statevector kernels.

Same signatures and in-place semantics as the compiled core; selected at
import time when the extension is unavailable or PDQAOA_BACKEND=python.
"""

from __future__ import annotations

import numpy as np


def energy_table(
    n_qubits: int,
    offset: float,
    field_qubits: np.ndarray,
    field_values: np.ndarray,
    coup_a: np.ndarray,
    coup_b: np.ndarray,
    coup_values: np.ndarray,
) -> np.ndarray:
    size = 1 << n_qubits
    index = np.arange(size, dtype=np.int64)
    spins = {}  # qubit -> +-1 column, built lazily

    def spin(q: int) -> np.ndarray:
        col = spins.get(q)
        if col is None:
            col = 1.0 - 2.0 * ((index >> q) & 1)
            spins[q] = col
        return col

    energies = np.full(size, offset, dtype=np.float64)
    for q, h in zip(field_qubits, field_values):
        energies += h * spin(int(q))
    for a, b, j in zip(coup_a, coup_b, coup_values):
        energies += j * (spin(int(a)) * spin(int(b)))
    return energies


def apply_phase_levels(
    amplitudes: np.ndarray, phase_re: np.ndarray, phase_im: np.ndarray, level_index: np.ndarray
) -> None:
    amplitudes *= (phase_re + 1j * phase_im)[level_index]


def apply_mixer(amplitudes: np.ndarray, n_qubits: int, c: float, s: float) -> None:
    # per-qubit rotation [[c, -i s], [-i s, c]] across amplitude pairs
    ms = -1j * s
    for q in range(n_qubits):
        view = amplitudes.reshape(-1, 2, 1 << q)
        lo = view[:, 0, :].copy()
        view[:, 0, :] *= c
        view[:, 0, :] += ms * view[:, 1, :]
        view[:, 1, :] *= c
        view[:, 1, :] += ms * lo


def expectation(amplitudes: np.ndarray, energies: np.ndarray) -> float:
    weights = amplitudes.real**2 + amplitudes.imag**2
    return float(weights @ energies)


def norm_squared(amplitudes: np.ndarray) -> float:
    return float(np.vdot(amplitudes, amplitudes).real)
