"""Independent exact diagonalization for small systems.

Two unrelated routes to ground-state energies serve as ground truth for
everything else in the package:

* exact_ground works on qubit Pauli sums (dense up to 14 qubits, matrix-free
  Lanczos up to 20);
* fermionic_ground builds the Hamiltonian directly in the fixed-electron-count
  occupation basis with explicit fermionic sign bookkeeping, never touching
  the Jordan-Wigner mapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .fermion import MolecularIntegrals
from .pauli import PauliSum

__all__ = ["SpectrumResult", "exact_ground", "fermionic_ground"]

DENSE_CAP = 14
ITERATIVE_CAP = 20
FERMION_SO_CAP = 20
_SEED = 7031


@dataclass
class SpectrumResult:
    energy: float
    vector: np.ndarray | None
    method: str  # "dense" | "iterative"
    residual_norm: float


def _bit_reverse(v: int, n: int) -> int:
    return int(format(v, f"0{n}b")[::-1], 2) if n else 0


class _PauliMatvec:
    """Matrix-free application of a PauliSum to a dense state vector."""

    def __init__(self, h: PauliSum):
        self.n = h.n
        self.dim = 1 << h.n
        self._cols = np.arange(self.dim, dtype=np.int64)
        terms = []
        for (x, z), c in h._terms.items():
            y = (x & z).bit_count()
            terms.append(
                (_bit_reverse(x, h.n), _bit_reverse(z, h.n), c * (1j) ** (y % 4))
            )
        self._terms = terms

    def __call__(self, psi: np.ndarray) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        cols = self._cols
        for xr, zr, coeff in self._terms:
            signs = 1.0 - 2.0 * (np.bitwise_count(cols & zr) & 1)
            contrib = (coeff * signs) * psi
            if xr:
                out += contrib[cols ^ xr]
            else:
                out += contrib
        return out


def _lanczos_ground(matvec, dim, tol=1e-10, max_iter=400, krylov_dim=60):
    """Lanczos with full reorthogonalization and a fixed-seed start vector."""
    rng = np.random.default_rng(_SEED)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    energy = None
    total_iter = 0
    while total_iter < max_iter:
        basis = [v]
        alphas, betas = [], []
        ritz_vec = v
        for _ in range(min(krylov_dim, max_iter - total_iter, dim)):
            total_iter += 1
            w = matvec(basis[-1])
            a = float(np.real(np.vdot(basis[-1], w)))
            alphas.append(a)
            w = w - a * basis[-1]
            if len(basis) > 1:
                w = w - betas[-1] * basis[-2]
            for u in basis:  # full reorthogonalization
                w = w - np.vdot(u, w) * u
            b = float(np.linalg.norm(w))
            tri = np.diag(alphas) + np.diag(betas, 1) + np.diag(betas, -1)
            evals, evecs = np.linalg.eigh(tri)
            energy = float(evals[0])
            resid_est = b * abs(evecs[-1, 0])
            ritz_vec = np.zeros(dim, dtype=complex)
            for coeff, u in zip(evecs[:, 0], basis):
                ritz_vec += coeff * u
            if b < 1e-13 or resid_est < 0.1 * tol:
                total_iter = max_iter  # converged / invariant subspace
                break
            betas.append(b)
            basis.append(w / b)
        v = ritz_vec / np.linalg.norm(ritz_vec)
    residual = float(np.linalg.norm(matvec(v) - energy * v))
    return energy, v, residual


def exact_ground(h: PauliSum, method: str | None = None) -> SpectrumResult:
    """Lowest eigenvalue of sum_i a_i P_i.

    Dense diagonalization up to 14 qubits; above that a matrix-free Lanczos
    over term-wise state application, up to 20 qubits.
    """
    if method is None:
        method = "dense" if h.n <= DENSE_CAP else "iterative"
    if method == "dense":
        if h.n > DENSE_CAP:
            raise ValueError(f"dense path refused for n={h.n} > {DENSE_CAP}")
        mat = h.to_matrix()
        evals, evecs = np.linalg.eigh(mat)
        vec = evecs[:, 0]
        residual = float(np.linalg.norm(mat @ vec - evals[0] * vec))
        return SpectrumResult(float(evals[0]), vec, "dense", residual)
    if method == "iterative":
        if h.n > ITERATIVE_CAP:
            raise ValueError(f"iterative path refused for n={h.n} > {ITERATIVE_CAP}")
        mv = _PauliMatvec(h)
        energy, vec, residual = _lanczos_ground(mv, mv.dim)
        if residual > 1e-9 * max(1.0, abs(energy)):
            raise RuntimeError(
                f"Lanczos did not converge: residual {residual:.2e}"
            )
        return SpectrumResult(energy, vec, "iterative", residual)
    raise ValueError(f"unknown method {method!r}")


# -- fermionic route ----------------------------------------------------


def _sector_basis(n_so: int, n_elec: int) -> np.ndarray:
    masks = [
        sum(1 << p for p in occ) for occ in combinations(range(n_so), n_elec)
    ]
    return np.array(sorted(masks), dtype=np.int64)


def _parity_below(states: np.ndarray, p: int) -> np.ndarray:
    below = states & ((1 << p) - 1)
    return (np.bitwise_count(below) & 1).astype(np.int64)


def _apply_op_string(basis, ops):
    """Apply a creation/annihilation string (applied right to left) to every
    determinant; returns (source rows alive, resulting masks, signs)."""
    state = basis.copy()
    sign = np.ones(len(basis), dtype=np.int64)
    alive = np.ones(len(basis), dtype=bool)
    for create, p in reversed(ops):
        bit = (state >> p) & 1
        alive &= (bit == 0) if create else (bit == 1)
        sign = sign * (1 - 2 * _parity_below(state, p))
        state = state | (1 << p) if create else state & ~(1 << p)
    return alive, state, sign


def fermionic_ground(m: MolecularIntegrals, method: str | None = None) -> SpectrumResult:
    """FCI energy in the fixed n_elec sector via occupation-basis construction
    with direct fermionic sign bookkeeping (independent of Jordan-Wigner)."""
    n_so = 2 * m.n_orb
    if n_so > FERMION_SO_CAP:
        raise ValueError(f"fermionic oracle refused for {n_so} > {FERMION_SO_CAP} spin orbitals")
    basis = _sector_basis(n_so, m.n_elec)
    dim = len(basis)
    rows_acc, cols_acc, vals_acc = [], [], []
    cols = np.arange(dim, dtype=np.int64)

    def add_string(coeff, ops):
        alive, state, sign = _apply_op_string(basis, ops)
        if not alive.any():
            return
        tgt = np.searchsorted(basis, state[alive])
        rows_acc.append(tgt)
        cols_acc.append(cols[alive])
        vals_acc.append(coeff * sign[alive])

    n = m.n_orb
    for i in range(n):
        for j in range(n):
            tij = m.t[i, j]
            if abs(tij) < 1e-14:
                continue
            for s in (0, 1):
                add_string(tij, [(True, 2 * i + s), (False, 2 * j + s)])
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    vv = m.v[i, j, k, l]
                    if abs(vv) < 1e-14:
                        continue
                    for a in (0, 1):
                        for b in (0, 1):
                            ops = [
                                (True, 2 * i + a),
                                (True, 2 * j + b),
                                (False, 2 * k + b),
                                (False, 2 * l + a),
                            ]
                            add_string(0.5 * vv, ops)

    if rows_acc:
        rows = np.concatenate(rows_acc)
        colsx = np.concatenate(cols_acc)
        vals = np.concatenate(vals_acc).astype(float)
        ham = sp.coo_matrix((vals, (rows, colsx)), shape=(dim, dim)).tocsr()
    else:
        ham = sp.csr_matrix((dim, dim))

    if method is None:
        method = "dense" if dim <= 2500 else "iterative"
    if method == "dense":
        dense = ham.toarray()
        evals, evecs = np.linalg.eigh(dense)
        vec = evecs[:, 0]
        energy = float(evals[0]) + m.e_core
        residual = float(np.linalg.norm(dense @ vec - evals[0] * vec))
        return SpectrumResult(energy, vec, "dense", residual)
    v0 = np.random.default_rng(_SEED).normal(size=dim)
    evals, evecs = spla.eigsh(ham, k=1, which="SA", v0=v0, tol=1e-12)
    vec = evecs[:, 0]
    residual = float(np.linalg.norm(ham @ vec - evals[0] * vec))
    if residual > 1e-9 * max(1.0, abs(evals[0])):
        raise RuntimeError(f"eigsh did not converge: residual {residual:.2e}")
    return SpectrumResult(float(evals[0]) + m.e_core, vec, "iterative", residual)
