"""Exact statevector simulation of the alternating-operator circuit.

One layer applies the diagonal cost phase exp(-i*gamma*H_c) followed by the
transverse-field mixer exp(-i*beta*sum_j X_j); the circuit starts from the
equal superposition.  The expectation is computed exactly from amplitudes,
never from shots; sampling is for final readout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .backends import kernels
from .bitstrings import index_to_string
from .ising import MAX_TABLE_QUBITS, EnergyTable

UNITARITY_ATOL = 1e-9


@dataclass(frozen=True)
class QaoaAngles:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.gammas) != len(self.betas):
            raise ValueError("gammas and betas must have equal length")
        if len(self.gammas) < 1:
            raise ValueError("need at least one layer")
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))

    @property
    def layers(self) -> int:
        return len(self.gammas)


@dataclass
class StateVector:
    amplitudes: np.ndarray
    n_qubits: int

    def __post_init__(self) -> None:
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ValueError(f"expected {1 << self.n_qubits} amplitudes, got shape {self.amplitudes.shape}")

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.n_qubits)

    def probabilities(self) -> np.ndarray:
        return self.amplitudes.real**2 + self.amplitudes.imag**2

    def norm_squared(self) -> float:
        return kernels.norm_squared(self.amplitudes)


def init_superposition(n_qubits: int, max_qubits: int = MAX_TABLE_QUBITS) -> StateVector:
    """Equal superposition: every amplitude 2^(-n/2)."""
    if not (1 <= n_qubits <= max_qubits):
        raise ValueError(f"n_qubits must be in [1, {max_qubits}], got {n_qubits}")
    amp = 2.0 ** (-n_qubits / 2.0)
    return StateVector(np.full(1 << n_qubits, amp, dtype=np.complex128), n_qubits)


def _check_match(state: StateVector, table: EnergyTable) -> None:
    if state.n_qubits != table.n_qubits:
        raise ValueError(f"state has {state.n_qubits} qubits, table has {table.n_qubits}")


def _phase_in_place(amplitudes: np.ndarray, table: EnergyTable, gamma: float) -> None:
    # exp(-i*gamma*E) evaluated once per distinct energy, then gathered
    values, level_index = table.levels()
    angles = gamma * values
    kernels.apply_phase_levels(amplitudes, np.cos(angles), -np.sin(angles), level_index)


def apply_cost_phase(state: StateVector, table: EnergyTable, gamma: float) -> StateVector:
    """Multiply each amplitude by exp(-i*gamma*energy); magnitudes unchanged."""
    _check_match(state, table)
    out = state.copy()
    _phase_in_place(out.amplitudes, table, gamma)
    return out


def apply_mixer(state: StateVector, beta: float) -> StateVector:
    """Per-qubit rotation [[cos b, -i sin b], [-i sin b, cos b]] on every qubit."""
    out = state.copy()
    kernels.apply_mixer(out.amplitudes, out.n_qubits, np.cos(beta), np.sin(beta))
    return out


def run_circuit(table: EnergyTable, angles: QaoaAngles) -> StateVector:
    """Superposition, then alternating cost phase / mixer for each layer."""
    state = init_superposition(table.n_qubits)
    for gamma, beta in zip(angles.gammas, angles.betas):
        _phase_in_place(state.amplitudes, table, gamma)
        kernels.apply_mixer(state.amplitudes, state.n_qubits, np.cos(beta), np.sin(beta))
    return state


def expectation(state: StateVector, table: EnergyTable) -> float:
    """Exact <state| H_c |state> = sum_idx |amp[idx]|^2 * table[idx]."""
    _check_match(state, table)
    return kernels.expectation(state.amplitudes, table.energies)


def sample(state: StateVector, shots: int, seed: int) -> dict[str, int]:
    """Seeded measurement counts keyed by bit string (qubit 0 leftmost)."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    hit = np.flatnonzero(counts)
    return {index_to_string(int(idx), state.n_qubits): int(counts[idx]) for idx in hit}


def marginal_decision_distribution(dist, n_decision: int, n_qubits: int | None = None) -> dict[str, float]:
    """Sum probability mass over slack configurations sharing the same first
    n_decision bits.  Accepts a full probability array or a counts/probability
    mapping keyed by full bit strings."""
    if isinstance(dist, Mapping):
        lengths = {len(k) for k in dist}
        if len(lengths) > 1:
            raise ValueError("inconsistent bit-string lengths")
        n = lengths.pop() if lengths else (n_qubits or 0)
        if not (0 < n_decision <= n):
            raise ValueError(f"n_decision must be in [1, {n}], got {n_decision}")
        total = float(sum(dist.values()))
        if total <= 0:
            raise ValueError("distribution has no mass")
        out: dict[str, float] = {}
        for key, weight in dist.items():
            short = key[:n_decision]
            out[short] = out.get(short, 0.0) + weight / total
        return dict(sorted(out.items()))
    probs = np.asarray(dist, dtype=np.float64)
    n = n_qubits if n_qubits is not None else int(probs.size).bit_length() - 1
    if probs.size != 1 << n:
        raise ValueError(f"probability array of size {probs.size} is not 2^{n}")
    if not (0 < n_decision <= n):
        raise ValueError(f"n_decision must be in [1, {n}], got {n_decision}")
    marginal = probs.reshape(1 << (n - n_decision), 1 << n_decision).sum(axis=0)
    return {index_to_string(i, n_decision): float(p) for i, p in enumerate(marginal)}


def marginal_counts(counts: Mapping[str, int], n_decision: int) -> dict[str, int]:
    """Aggregate integer counts by their first n_decision bits."""
    out: dict[str, int] = {}
    for key, c in counts.items():
        short = key[:n_decision]
        out[short] = out.get(short, 0) + c
    return dict(sorted(out.items()))
