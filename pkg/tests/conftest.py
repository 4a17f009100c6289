"""Shared test helpers: independent dense oracles built by explicit Kronecker
products, plus random-instance generators."""

from pathlib import Path

import numpy as np
import pytest

from mcamps.pauli import PauliString, PauliSum

FIXTURES = Path(__file__).parent / "fixtures"

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
LETTER_MATS = {"I": I2, "X": SX, "Y": SY, "Z": SZ}


def kron_chain(mats):
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def dense_string(p: PauliString) -> np.ndarray:
    """Dense matrix of a PauliString via an explicit Kronecker chain."""
    return (1j) ** p.phase_exp * kron_chain(LETTER_MATS[l] for l in p.label)


def dense_sum(s: PauliSum) -> np.ndarray:
    dim = 2**s.n
    out = np.zeros((dim, dim), dtype=complex)
    for p, c in s.items():
        out += c * dense_string(p)
    return out


def random_string(rng, n) -> PauliString:
    return PauliString(n, int(rng.integers(0, 2**n)), int(rng.integers(0, 2**n)),
                       int(rng.integers(0, 4)))


def random_hermitian_sum(rng, n, n_terms, drop_tol=1e-12) -> PauliSum:
    """Random Hermitian sum: real coefficients on random letter strings."""
    terms = []
    for _ in range(n_terms):
        p = PauliString(n, int(rng.integers(0, 2**n)), int(rng.integers(0, 2**n)), 0)
        terms.append((p, float(rng.normal())))
    return PauliSum.from_terms(n, terms, drop_tol)


def _qubit_index(mask: int, n: int) -> int:
    """Fock mask (bit p = spin orbital p) -> matrix index (site 0 = MSB)."""
    return int(format(mask, f"0{n}b")[::-1], 2)


def dense_fermion_string(n_so: int, ops, coeff=1.0) -> np.ndarray:
    """Dense Fock-space matrix of a creation/annihilation string.

    ops is a list of (create: bool, orbital) applied right to left, with the
    ordered-product sign convention: each operator picks up (-1)**(number of
    occupied orbitals below it).  Independent of any qubit mapping.
    """
    dim = 2**n_so
    mat = np.zeros((dim, dim), dtype=complex)
    for mask in range(dim):
        state, sign, alive = mask, 1, True
        for create, p in reversed(ops):
            bit = (state >> p) & 1
            if create == bool(bit):
                alive = False
                break
            sign *= -1 if bin(state & ((1 << p) - 1)).count("1") % 2 else 1
            state = state | (1 << p) if create else state & ~(1 << p)
        if alive:
            mat[_qubit_index(state, n_so), _qubit_index(mask, n_so)] += coeff * sign
    return mat


def dense_molecular_hamiltonian(m) -> np.ndarray:
    """Occupation-basis dense Hamiltonian (in the qubit matrix layout used by
    PauliSum.to_matrix), built with fermionic sign rules only."""
    n_so = 2 * m.n_orb
    dim = 2**n_so
    out = m.e_core * np.eye(dim, dtype=complex)
    for i in range(m.n_orb):
        for j in range(m.n_orb):
            if abs(m.t[i, j]) < 1e-14:
                continue
            for s in (0, 1):
                out += dense_fermion_string(
                    n_so, [(True, 2 * i + s), (False, 2 * j + s)], m.t[i, j]
                )
    for i in range(m.n_orb):
        for j in range(m.n_orb):
            for k in range(m.n_orb):
                for l in range(m.n_orb):
                    if abs(m.v[i, j, k, l]) < 1e-14:
                        continue
                    for a in (0, 1):
                        for b in (0, 1):
                            ops = [
                                (True, 2 * i + a),
                                (True, 2 * j + b),
                                (False, 2 * k + b),
                                (False, 2 * l + a),
                            ]
                            out += dense_fermion_string(
                                n_so, ops, 0.5 * m.v[i, j, k, l]
                            )
    return out


def random_integrals(rng, n_orb, n_elec=None, scale=1.0):
    """Random MolecularIntegrals with the full real-orbital symmetry class."""
    from mcamps.fermion import MolecularIntegrals, chemist_to_physicist

    t = rng.normal(size=(n_orb, n_orb)) * scale
    t = (t + t.T) / 2
    g = rng.normal(size=(n_orb,) * 4) * scale
    g = g + g.transpose(1, 0, 2, 3)
    g = g + g.transpose(0, 1, 3, 2)
    g = g + g.transpose(2, 3, 0, 1)
    g /= 8.0
    if n_elec is None:
        n_elec = 2 * (n_orb // 2) or 2
    return MolecularIntegrals(
        n_orb, n_elec, float(rng.normal()), t, chemist_to_physicist(g)
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
