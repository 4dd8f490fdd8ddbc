"""QUBO -> Ising form and the diagonal energy table.

The substitution is x_i = (1 - z_i) / 2 with z_i = +1 for bit 0 and -1 for
bit 1, so a measured bit of 1 means the binary variable is 1 and displayed
strings read off variable values directly.  The normative contract is the
energy table: table[idx] equals the QUBO evaluated at the bits of idx.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backends import kernels
from .qubo import QuboModel

MAX_TABLE_QUBITS = 26  # 2^26 float64 energies ~ 0.5 GB; guard against typos


@dataclass(frozen=True)
class IsingHamiltonian:
    """offset + sum_i fields[i]*Z_i + sum_{i<j} couplings[(i,j)]*Z_i*Z_j."""

    n_qubits: int
    offset: float
    fields: dict[int, float]
    couplings: dict[tuple[int, int], float]


class EnergyTable:
    """Cost Hamiltonian diagonal over all 2^n computational basis states.

    Also caches the distinct energy values and a per-index level map, which
    lets the cost-phase kernel compute one complex exponential per distinct
    energy instead of one per amplitude.
    """

    __slots__ = ("energies", "n_qubits", "_levels", "_level_index")

    def __init__(self, energies: np.ndarray, n_qubits: int):
        energies = np.ascontiguousarray(energies, dtype=np.float64)
        if energies.shape != (1 << n_qubits,):
            raise ValueError(f"expected {1 << n_qubits} energies, got shape {energies.shape}")
        self.energies = energies
        self.n_qubits = n_qubits
        self._levels = None
        self._level_index = None

    def __len__(self) -> int:
        return self.energies.shape[0]

    def levels(self) -> tuple[np.ndarray, np.ndarray]:
        """(distinct energy values, per-index position into them)."""
        if self._levels is None:
            values, inverse = np.unique(self.energies, return_inverse=True)
            self._levels = values
            self._level_index = np.ascontiguousarray(inverse.reshape(-1), dtype=np.int64)
        return self._levels, self._level_index


def qubo_to_ising(model: QuboModel) -> IsingHamiltonian:
    """Rewrite the QUBO polynomial over +-1 spins under x = (1 - z)/2."""
    offset = model.offset
    fields: dict[int, float] = {}
    couplings: dict[tuple[int, int], float] = {}
    for i, c in model.linear.items():
        offset += c / 2.0
        fields[i] = fields.get(i, 0.0) - c / 2.0
    for (i, j), c in model.quadratic.items():
        offset += c / 4.0
        fields[i] = fields.get(i, 0.0) - c / 4.0
        fields[j] = fields.get(j, 0.0) - c / 4.0
        couplings[(i, j)] = couplings.get((i, j), 0.0) + c / 4.0
    fields = {i: h for i, h in sorted(fields.items()) if h != 0.0}
    couplings = {k: j for k, j in sorted(couplings.items()) if j != 0.0}
    return IsingHamiltonian(n_qubits=model.n_qubits, offset=offset, fields=fields, couplings=couplings)


def diagonal_energies(h: IsingHamiltonian, max_qubits: int = MAX_TABLE_QUBITS) -> EnergyTable:
    """Materialize the 2^n diagonal of the Hamiltonian."""
    if h.n_qubits > max_qubits:
        raise ValueError(f"{h.n_qubits} qubits exceeds table limit of {max_qubits}")
    if h.n_qubits < 1:
        raise ValueError("need at least one qubit")
    field_qubits = np.fromiter(h.fields.keys(), dtype=np.int32, count=len(h.fields))
    field_values = np.fromiter(h.fields.values(), dtype=np.float64, count=len(h.fields))
    coup_a = np.fromiter((i for i, _ in h.couplings), dtype=np.int32, count=len(h.couplings))
    coup_b = np.fromiter((j for _, j in h.couplings), dtype=np.int32, count=len(h.couplings))
    coup_values = np.fromiter(h.couplings.values(), dtype=np.float64, count=len(h.couplings))
    energies = kernels.energy_table(h.n_qubits, h.offset, field_qubits, field_values, coup_a, coup_b, coup_values)
    return EnergyTable(energies, h.n_qubits)


def ising_to_dict(h: IsingHamiltonian) -> dict:
    """Structured export in the same style as the QUBO export."""
    return {
        "offset": h.offset,
        "fields": [[i, v] for i, v in h.fields.items()],
        "couplings": [[i, j, v] for (i, j), v in h.couplings.items()],
        "n_qubits": h.n_qubits,
    }
