"""The one place that owns the bit/string/index conventions.

Qubit i is the i-th character of a displayed bit string (qubit 0 leftmost)
and the i-th least significant bit of a basis-state integer index.  A bit
value of 1 means the corresponding binary variable is 1.
"""

from __future__ import annotations


def index_to_string(index: int, n_qubits: int) -> str:
    return "".join("1" if (index >> i) & 1 else "0" for i in range(n_qubits))


def string_to_index(bits: str) -> int:
    index = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            index |= 1 << i
        elif ch != "0":
            raise ValueError(f"bit string may contain only 0/1, got {bits!r}")
    return index


def index_to_bits(index: int, n_qubits: int) -> tuple[int, ...]:
    return tuple((index >> i) & 1 for i in range(n_qubits))


def bits_to_index(bits) -> int:
    index = 0
    for i, b in enumerate(bits):
        if b == 1:
            index |= 1 << i
        elif b != 0:
            raise ValueError(f"bits must be 0/1, got {b!r} at position {i}")
    return index


def string_to_vertex_set(bits: str) -> frozenset[int]:
    """Decision bit string -> set of selected vertices."""
    return frozenset(i for i, ch in enumerate(bits) if ch == "1")
