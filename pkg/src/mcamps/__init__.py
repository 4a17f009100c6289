"""Ground-state solver combining MPS-based DMRG with matchgate (orbital
rotation) and two-qubit Clifford circuit augmentation."""

__version__ = "0.1.0"

from .pauli import PauliString, PauliSum, pauli_mul, commutes, sum_accumulate

__all__ = [
    "PauliString",
    "PauliSum",
    "pauli_mul",
    "commutes",
    "sum_accumulate",
]
