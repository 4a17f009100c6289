"""Second-quantized electronic Hamiltonians, particle-number-preserving
matchgate action as orbital rotation, and the Jordan-Wigner qubit mapping.

Two-body integrals are stored in physicist index order with the Hamiltonian

    H = sum_{ij,s}  t_ij c+_is c_js
      + 1/2 sum_{ijkl,a,b} v_ijkl c+_ia c+_jb c_kb c_la
      + e_core

(spins a, b summed independently).  FCIDUMP files carry chemist-ordered
integrals (ij|kl); the pure index permutation v_ijkl = (il|jk) lives in the
boundary helpers below, so for a single orbital v_0000 equals the file value
and the doubly occupied energy is 2 t_00 + v_0000 + e_core.

Qubit ordering is interleaved: spatial orbital i maps to qubit 2i (spin up)
and qubit 2i+1 (spin down), keeping intra-orbital terms local.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .pauli import PauliString, PauliSum, pauli_mul

__all__ = [
    "MolecularIntegrals",
    "OrbitalRotation",
    "givens_rotation",
    "rotate_integrals",
    "orbital_to_majorana",
    "jordan_wigner",
    "particle_number_sum",
    "chemist_to_physicist",
    "physicist_to_chemist",
]

SYMMETRY_TOL = 1e-10


def chemist_to_physicist(g: np.ndarray) -> np.ndarray:
    """Chemist (ij|kl) tensor -> physicist order, v_ijkl = (il|jk)."""
    return np.einsum("iljk->ijkl", g)


def physicist_to_chemist(v: np.ndarray) -> np.ndarray:
    """Inverse of chemist_to_physicist: (pq|rs) = v_{p r s q}."""
    return np.einsum("ijkl->iljk", v)


@dataclass
class MolecularIntegrals:
    """One- and two-body molecular integrals plus core energy (Hartree).

    v is stored in the physicist index order of the Hamiltonian above; its
    permutational symmetry class is the image of the chemist 8-fold group
    (real orbitals), checked by validate().
    """

    n_orb: int
    n_elec: int
    e_core: float
    t: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        self.validate()

    def validate(self):
        n = self.n_orb
        if n < 1:
            raise ValueError("n_orb must be >= 1")
        if not 0 <= self.n_elec <= 2 * n:
            raise ValueError("n_elec out of range")
        if self.n_elec % 2:
            raise ValueError("restricted-orbital conventions require even n_elec")
        if self.t.shape != (n, n):
            raise ValueError(f"t has shape {self.t.shape}, expected {(n, n)}")
        if self.v.shape != (n, n, n, n):
            raise ValueError(f"v has shape {self.v.shape}, expected 4x n_orb")
        if not np.allclose(self.t, self.t.T, atol=SYMMETRY_TOL):
            raise ValueError("t is not symmetric")
        g = physicist_to_chemist(self.v)
        for perm in ((1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)):
            if not np.allclose(g, g.transpose(perm), atol=SYMMETRY_TOL):
                raise ValueError("v violates the declared index symmetries")

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_orb

    def hf_occupations(self) -> list[int]:
        """Occupation per qubit for the aufbau determinant (interleaved)."""
        occ = [0] * self.n_qubits
        for i in range(self.n_elec // 2):
            occ[2 * i] = 1
            occ[2 * i + 1] = 1
        return occ


@dataclass
class OrbitalRotation:
    """Real orthogonal single-particle basis change (the matchgate layer)."""

    u: np.ndarray

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=float)
        n = self.u.shape[0]
        if self.u.shape != (n, n):
            raise ValueError("rotation matrix must be square")
        if not np.allclose(self.u.T @ self.u, np.eye(n), atol=SYMMETRY_TOL):
            raise ValueError("rotation matrix is not orthogonal")

    @property
    def n_orb(self) -> int:
        return self.u.shape[0]

    @property
    def det_sign(self) -> int:
        return 1 if np.linalg.det(self.u) > 0 else -1

    @classmethod
    def identity(cls, n: int) -> "OrbitalRotation":
        return cls(np.eye(n))


def givens_rotation(n: int, i: int, j: int, theta: float) -> OrbitalRotation:
    """Planar rotation by theta in the (i, j) orbital plane."""
    if not (0 <= i < n and 0 <= j < n and i != j):
        raise ValueError("invalid orbital pair")
    u = np.eye(n)
    c, s = np.cos(theta), np.sin(theta)
    u[i, i] = c
    u[j, j] = c
    u[i, j] = s
    u[j, i] = -s
    return OrbitalRotation(u)


def rotate_integrals(m: MolecularIntegrals, r: OrbitalRotation) -> MolecularIntegrals:
    """Basis change t' = u^T t u, v' contracted with u on each index.

    The four-index transform is staged one index at a time (O(N^5) cost).
    """
    if r.n_orb != m.n_orb:
        raise ValueError(f"rotation is {r.n_orb}x{r.n_orb}, integrals have N={m.n_orb}")
    u = r.u
    t = u.T @ m.t @ u
    v = m.v
    for _ in range(4):
        # contract the leading index; axes cycle so four passes restore order
        v = np.tensordot(v, u, axes=([0], [0]))
    return MolecularIntegrals(m.n_orb, m.n_elec, m.e_core, t, v)


def orbital_to_majorana(r: OrbitalRotation) -> np.ndarray:
    """Orthogonal 2N x 2N Majorana-mode matrix induced by the orbital rotation.

    Majorana convention: gamma_{2j} = c_j + c+_j, gamma_{2j+1} = -i(c_j - c+_j).
    Each orbital contributes a doubled block, so det(O) = det(u)^2 = +1.
    """
    o = np.kron(r.u.T, np.eye(2))
    return o


# -- Jordan-Wigner ------------------------------------------------------


def _ladder_terms(n_so: int, p: int, dagger: bool):
    """JW image of c_p (or c+_p) as [(PauliString, coeff)] with Z tail below p."""
    tail = (1 << p) - 1
    x = 1 << p
    sign = -0.5j if dagger else 0.5j
    return [
        (PauliString(n_so, x, tail, 0), 0.5),
        (PauliString(n_so, x, tail | x, 0), sign),
    ]


def _mul_term_lists(a, b):
    out = []
    for pa, ca in a:
        for pb, cb in b:
            prod = pauli_mul(pa, pb)
            out.append((prod, ca * cb))
    return out


class JordanWignerMap:
    """Precomputed linear map from integral tables to Pauli coefficients.

    The sparsity pattern of the mapped Hamiltonian depends only on n_orb, so
    the expansion (which Pauli key receives which multiple of which integral
    entry) is computed once and applying it to concrete (t, v, e_core) values
    is a vectorized gather + segment sum.  This is what makes repeated
    mapping of rotated integrals inside the matchgate line search cheap.
    """

    def __init__(self, n_orb: int):
        self.n_orb = n_orb
        n_so = 2 * n_orb
        self.n_qubits = n_so

        create = [_ladder_terms(n_so, p, True) for p in range(n_so)]
        annih = [_ladder_terms(n_so, p, False) for p in range(n_so)]
        excit = [
            [_mul_term_lists(create[p], annih[q]) for q in range(n_so)]
            for p in range(n_so)
        ]

        keys: list[int] = []
        mult: list[complex] = []
        src: list[int] = []
        n2 = n_orb * n_orb
        # one-body block: sources 0 .. N^2-1 index t.ravel()
        for i in range(n_orb):
            for j in range(n_orb):
                for s in (0, 1):
                    for p_str, c in excit[2 * i + s][2 * j + s]:
                        keys.append(p_str.x_bits | p_str.z_bits << 32)
                        mult.append(c * (1j) ** p_str.phase_exp)
                        src.append(i * n_orb + j)
        # two-body block: sources N^2 .. N^2+N^4-1 index v.ravel(); each
        # integral enters with the Hamiltonian's 1/2 prefactor and
        # c+_a c+_b c_c c_d = delta_bc E_ad - E_ac E_bd
        for i in range(n_orb):
            for j in range(n_orb):
                for k in range(n_orb):
                    base_ijk = ((i * n_orb + j) * n_orb + k) * n_orb
                    for l in range(n_orb):
                        src_idx = n2 + base_ijk + l
                        for alpha in (0, 1):
                            for beta in (0, 1):
                                a = 2 * i + alpha
                                b = 2 * j + beta
                                cc = 2 * k + beta
                                d = 2 * l + alpha
                                if b == cc:
                                    for p_str, c in excit[a][d]:
                                        keys.append(p_str.x_bits | p_str.z_bits << 32)
                                        mult.append(0.5 * c * (1j) ** p_str.phase_exp)
                                        src.append(src_idx)
                                for p_str, c in _mul_term_lists(excit[a][cc], excit[b][d]):
                                    keys.append(p_str.x_bits | p_str.z_bits << 32)
                                    mult.append(-0.5 * c * (1j) ** p_str.phase_exp)
                                    src.append(src_idx)

        key_arr = np.array(keys, dtype=np.uint64)
        self._uniq_keys, inverse = np.unique(key_arr, return_inverse=True)
        self._inverse = inverse.astype(np.int64)
        self._mult = np.array(mult, dtype=complex)
        self._src = np.array(src, dtype=np.int64)
        self._identity_slot = int(np.searchsorted(self._uniq_keys, np.uint64(0)))
        assert self._uniq_keys[self._identity_slot] == 0

    def apply(self, m: MolecularIntegrals, drop_tol: float = 1e-12) -> PauliSum:
        if m.n_orb != self.n_orb:
            raise ValueError("integral dimension does not match map")
        table = np.concatenate([m.t.ravel(), m.v.ravel()])
        w = table[self._src] * self._mult
        nuq = len(self._uniq_keys)
        coeff = np.bincount(self._inverse, weights=w.real, minlength=nuq).astype(
            complex
        )
        coeff += 1j * np.bincount(self._inverse, weights=w.imag, minlength=nuq)
        coeff[self._identity_slot] += m.e_core
        mask32 = np.uint64(0xFFFFFFFF)
        live = np.abs(coeff) >= drop_tol
        xs = (self._uniq_keys[live] & mask32).astype(np.int64)
        zs = (self._uniq_keys[live] >> np.uint64(32)).astype(np.int64)
        raw = {
            (int(x), int(z)): complex(c)
            for x, z, c in zip(xs, zs, coeff[live])
        }
        return PauliSum._from_raw(self.n_qubits, raw, drop_tol)


@lru_cache(maxsize=16)
def _jw_map(n_orb: int) -> JordanWignerMap:
    return JordanWignerMap(n_orb)


def jordan_wigner(m: MolecularIntegrals, drop_tol: float = 1e-12) -> PauliSum:
    """Qubit Hamiltonian over 2 n_orb qubits, interleaved spin ordering,
    including e_core times identity."""
    return _jw_map(m.n_orb).apply(m, drop_tol)


def particle_number_sum(n_orb: int) -> PauliSum:
    """JW image of the total electron count sum_p (I - Z_p)/2."""
    n_so = 2 * n_orb
    raw: dict[tuple[int, int], complex] = {(0, 0): n_so / 2.0}
    for p in range(n_so):
        raw[(0, 1 << p)] = -0.5
    return PauliSum._from_raw(n_so, raw)
