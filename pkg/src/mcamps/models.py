"""Built-in lattice models: oracle-checkable test surfaces that need no
chemistry input files."""

from __future__ import annotations

from .pauli import PauliSum

__all__ = ["tfim", "heisenberg"]


def tfim(n: int, h: float) -> PauliSum:
    """Transverse-field Ising chain  H = -sum Z_i Z_{i+1} - h sum X_i."""
    if n < 2:
        raise ValueError("need at least two sites")
    raw: dict[tuple[int, int], complex] = {}
    for i in range(n - 1):
        raw[(0, 0b11 << i)] = -1.0
    for i in range(n):
        raw[(1 << i, 0)] = raw.get((1 << i, 0), 0.0) - h
    return PauliSum._from_raw(n, raw)


def heisenberg(n: int) -> PauliSum:
    """Spin-1/2 Heisenberg chain  H = sum_i S_i . S_{i+1}
    = sum_i (X X + Y Y + Z Z)/4 on neighboring sites."""
    if n < 2:
        raise ValueError("need at least two sites")
    raw: dict[tuple[int, int], complex] = {}
    for i in range(n - 1):
        pair = 0b11 << i
        raw[(pair, 0)] = 0.25  # XX
        raw[(pair, pair)] = 0.25  # YY
        raw[(0, pair)] = 0.25  # ZZ
    return PauliSum._from_raw(n, raw)
