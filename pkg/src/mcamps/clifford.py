"""Two-qubit Clifford group: tableau representation, exhaustive enumeration,
coset reduction, and conjugation of Pauli strings and sums.

A tableau stores the conjugation images of the generators X_0..X_{k-1},
Z_0..Z_{k-1} as signed Pauli strings.  Composition and conjugation are purely
symbolic (never via dense matrices), so their cost is independent of the
system size the gates are later embedded into.  A concrete unitary matrix is
recorded for every enumerated tableau (fixed up to global phase), which is
what gets applied to two-site wavefunctions during the DMRG disentangling
step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache

import numpy as np

from .pauli import PauliString, PauliSum, SizeMismatchError, pauli_mul, commutes

__all__ = [
    "CliffordTableau",
    "CliffordCircuit",
    "enumerate_two_qubit_cliffords",
    "two_qubit_clifford_matrices",
    "tableau_index",
    "tableau_matrix",
    "coset_representatives",
    "coset_representative_indices",
    "conjugate_pauli",
    "conjugate_sum",
]


@dataclass(frozen=True, slots=True)
class CliffordTableau:
    """Conjugation images of X_0..X_{k-1}, Z_0..Z_{k-1} (in that order)."""

    k: int
    images: tuple[PauliString, ...]

    def encoding(self) -> tuple:
        """Canonical sortable/hashable encoding of the tableau."""
        return tuple(
            (g.phase_exp, g.x_bits, g.z_bits) for g in self.images
        )

    @classmethod
    def identity(cls, k: int) -> "CliffordTableau":
        imgs = [PauliString.single(k, j, "X") for j in range(k)] + [
            PauliString.single(k, j, "Z") for j in range(k)
        ]
        return cls(k, tuple(imgs))

    def is_identity(self) -> bool:
        return self == CliffordTableau.identity(self.k)

    def is_symplectic(self) -> bool:
        """Images satisfy the generator (anti)commutation pattern."""
        k = self.k
        for a in range(2 * k):
            for b in range(a + 1, 2 * k):
                # X_i, Z_i anticommute; all other generator pairs commute
                anticommute = (b - a == k)
                if commutes(self.images[a], self.images[b]) == anticommute:
                    return False
        for g in self.images:
            if g.phase_exp not in (0, 2):
                return False
        return True

    def then(self, after: "CliffordTableau") -> "CliffordTableau":
        """Tableau of the composite unitary (self applied first, then after)."""
        if after.k != self.k:
            raise SizeMismatchError("tableau sizes differ")
        imgs = tuple(conjugate_pauli(after, g) for g in self.images)
        return CliffordTableau(self.k, imgs)

    def tensor(self, other: "CliffordTableau") -> "CliffordTableau":
        """self acting on the first block of sites, other on the second."""
        k = self.k + other.k

        def embed(p: PauliString, shift: int) -> PauliString:
            return PauliString(k, p.x_bits << shift, p.z_bits << shift, p.phase_exp)

        xs = [embed(g, 0) for g in self.images[: self.k]] + [
            embed(g, self.k) for g in other.images[: other.k]
        ]
        zs = [embed(g, 0) for g in self.images[self.k :]] + [
            embed(g, self.k) for g in other.images[other.k :]
        ]
        return CliffordTableau(k, tuple(xs + zs))


def conjugate_pauli(t: CliffordTableau, p: PauliString) -> PauliString:
    """Image t p t^dagger as a signed Pauli string.

    Decomposes p = i**(phase_exp + y) X^x Z^z (y = number of Y letters) and
    multiplies the corresponding generator images.
    """
    if p.n != t.k:
        raise SizeMismatchError(f"string acts on {p.n} qubits, tableau on {t.k}")
    acc = PauliString.identity(t.k)
    for j in range(t.k):
        if p.x_bits >> j & 1:
            acc = pauli_mul(acc, t.images[j])
    for j in range(t.k):
        if p.z_bits >> j & 1:
            acc = pauli_mul(acc, t.images[t.k + j])
    y = (p.x_bits & p.z_bits).bit_count()
    phase = (acc.phase_exp + p.phase_exp + y) % 4
    return PauliString(t.k, acc.x_bits, acc.z_bits, phase)


@cache
def _conj_table(t: CliffordTableau) -> tuple:
    """Lookup table over all 4^k local strings: (x, z) -> (x', z', phase_exp)."""
    k = t.k
    table = []
    for z in range(1 << k):
        for x in range(1 << k):
            q = conjugate_pauli(t, PauliString(k, x, z, 0))
            table.append((q.x_bits, q.z_bits, q.phase_exp))
    return tuple(table)


def conjugate_sum(h: PauliSum, j: int, t: CliffordTableau) -> PauliSum:
    """Conjugate every term's restriction to sites (j, j+1) by the tableau.

    Pauli letter strings factor exactly over sites, so only the two local
    bits of each key change (plus a phase folded into the coefficient).
    Clifford conjugation is a bijection on Pauli strings modulo phase, hence
    the term count never grows.
    """
    if t.k != 2:
        raise ValueError("conjugate_sum expects a two-qubit tableau")
    if not 0 <= j <= h.n - 2:
        raise ValueError(f"site {j} out of range for two-qubit gate on n={h.n}")
    table = _conj_table(t)
    phases = (1.0 + 0j, 1j, -1.0 + 0j, -1j)
    mask = ~(3 << j)
    raw: dict[tuple[int, int], complex] = {}
    for (x, z), c in h._terms.items():
        xl = (x >> j) & 3
        zl = (z >> j) & 3
        if xl or zl:
            nx, nz, ph = table[(zl << 2) | xl]
            key = ((x & mask) | (nx << j), (z & mask) | (nz << j))
            c = c * phases[ph]
        else:
            key = (x, z)
        raw[key] = raw.get(key, 0.0) + c
    return PauliSum._from_raw(h.n, raw, h.drop_tol)


# -- generators and enumeration ---------------------------------------

_SQRT2 = np.sqrt(2.0)
_H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2
_S_MAT = np.array([[1, 0], [0, 1j]], dtype=complex)
_I_MAT = np.eye(2, dtype=complex)
# control on site 0 (most significant), target on site 1
_CNOT_MAT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def _single(label_map: dict[str, str], signs: dict[str, int]) -> CliffordTableau:
    imgs = tuple(
        PauliString.from_label(label_map[g], 2 * signs.get(g, 0))
        for g in ("X", "Z")
    )
    return CliffordTableau(1, imgs)


_H_TAB = _single({"X": "Z", "Z": "X"}, {})
_S_TAB = _single({"X": "Y", "Z": "Z"}, {})


def _cnot_tableau() -> CliffordTableau:
    imgs = (
        PauliString.from_label("XX"),  # X0 -> X0 X1
        PauliString.from_label("IX"),  # X1 -> X1
        PauliString.from_label("ZI"),  # Z0 -> Z0
        PauliString.from_label("ZZ"),  # Z1 -> Z0 Z1
    )
    return CliffordTableau(2, imgs)


def _bfs_closure(generators: list[tuple[CliffordTableau, np.ndarray]]):
    """Breadth-first closure under the generator set until fixpoint."""
    k = generators[0][0].k
    ident = CliffordTableau.identity(k)
    seen: dict[tuple, tuple[CliffordTableau, np.ndarray]] = {
        ident.encoding(): (ident, np.eye(2**k, dtype=complex))
    }
    frontier = [ident.encoding()]
    while frontier:
        new_frontier = []
        for enc in frontier:
            t, m = seen[enc]
            for gt, gm in generators:
                nt = t.then(gt)
                nenc = nt.encoding()
                if nenc not in seen:
                    seen[nenc] = (nt, gm @ m)
                    new_frontier.append(nenc)
        frontier = new_frontier
    ordered = sorted(seen.items())
    tableaus = tuple(tm[0] for _, tm in ordered)
    matrices = np.array([tm[1] for _, tm in ordered])
    return tableaus, matrices


@cache
def _single_qubit_cliffords():
    gens = [(_H_TAB, _H_MAT), (_S_TAB, _S_MAT)]
    tabs, mats = _bfs_closure(gens)
    assert len(tabs) == 24
    return tabs, mats


@cache
def _two_qubit_closure():
    ident1 = CliffordTableau.identity(1)
    gens = [
        (_H_TAB.tensor(ident1), np.kron(_H_MAT, _I_MAT)),
        (ident1.tensor(_H_TAB), np.kron(_I_MAT, _H_MAT)),
        (_S_TAB.tensor(ident1), np.kron(_S_MAT, _I_MAT)),
        (ident1.tensor(_S_TAB), np.kron(_I_MAT, _S_MAT)),
        (_cnot_tableau(), _CNOT_MAT),
    ]
    return _bfs_closure(gens)


def enumerate_two_qubit_cliffords() -> tuple[CliffordTableau, ...]:
    """All distinct two-qubit Clifford tableaus modulo global phase, in
    canonical lexicographic order of the tableau encoding."""
    return _two_qubit_closure()[0]


def two_qubit_clifford_matrices() -> np.ndarray:
    """Unitaries aligned with enumerate_two_qubit_cliffords()."""
    return _two_qubit_closure()[1]


@cache
def _index_map() -> dict[tuple, int]:
    return {t.encoding(): i for i, t in enumerate(enumerate_two_qubit_cliffords())}


def tableau_index(t: CliffordTableau) -> int:
    """Position of the tableau in the canonical enumeration order."""
    return _index_map()[t.encoding()]


def tableau_matrix(t: CliffordTableau) -> np.ndarray:
    """A concrete unitary realizing the tableau (fixed up to global phase)."""
    return two_qubit_clifford_matrices()[tableau_index(t)]


@cache
def _coset_partition() -> tuple[tuple[CliffordTableau, ...], tuple[int, ...]]:
    tabs = enumerate_two_qubit_cliffords()
    idx_map = _index_map()
    singles, _ = _single_qubit_cliffords()
    post = [a.tensor(b) for a in singles for b in singles]
    covered = np.zeros(len(tabs), dtype=bool)
    reps: list[CliffordTableau] = []
    rep_indices: list[int] = []
    ident = CliffordTableau.identity(2)
    order = [ident] + list(tabs)
    for u in order:
        if covered[idx_map[u.encoding()]]:
            continue
        reps.append(u)
        rep_indices.append(idx_map[u.encoding()])
        for kt in post:
            covered[idx_map[u.then(kt).encoding()]] = True
    assert covered.all()
    return tuple(reps), tuple(rep_indices)


def coset_representatives() -> tuple[CliffordTableau, ...]:
    """One representative per coset of single-qubit gates applied after the
    two-site gate; such gates cannot alter the two-site singular spectrum,
    so the disentangler search only needs these.  The identity represents
    its own coset and comes first."""
    return _coset_partition()[0]


def coset_representative_indices() -> tuple[int, ...]:
    return _coset_partition()[1]


# -- gate record ------------------------------------------------------


@dataclass
class CliffordCircuit:
    """Ordered list of two-qubit gates (site j, tableau) acting on (j, j+1).

    The list order is application order on the state: for gates g1, g2, ...
    the full unitary is ... U(g2) U(g1).
    """

    n: int
    gates: list[tuple[int, CliffordTableau]] = field(default_factory=list)

    def append(self, j: int, t: CliffordTableau) -> None:
        if not 0 <= j <= self.n - 2:
            raise ValueError(f"gate site {j} out of range")
        self.gates.append((j, t))

    def __len__(self) -> int:
        return len(self.gates)

    def copy(self) -> "CliffordCircuit":
        return CliffordCircuit(self.n, list(self.gates))

    def to_records(self) -> list[tuple[int, int]]:
        """Serializable (site, tableau_index) records in application order."""
        return [(j, tableau_index(t)) for j, t in self.gates]

    @classmethod
    def from_records(cls, n: int, records) -> "CliffordCircuit":
        tabs = enumerate_two_qubit_cliffords()
        circ = cls(n)
        for j, idx in records:
            circ.append(int(j), tabs[int(idx)])
        return circ

    def conjugate_sum(self, h: PauliSum) -> PauliSum:
        """C h C^dagger for the full recorded circuit."""
        for j, t in self.gates:
            h = conjugate_sum(h, j, t)
        return h

    def apply_to_statevector(self, psi: np.ndarray) -> np.ndarray:
        """Apply the circuit to a dense state (site 0 most significant)."""
        return self._apply(psi, dagger=False)

    def apply_dagger_to_statevector(self, psi: np.ndarray) -> np.ndarray:
        return self._apply(psi, dagger=True)

    def _apply(self, psi: np.ndarray, dagger: bool) -> np.ndarray:
        dim = psi.shape[0]
        n = self.n
        if dim != 2**n:
            raise ValueError("state dimension does not match circuit size")
        psi = psi.astype(complex)
        gates = reversed(self.gates) if dagger else self.gates
        for j, t in gates:
            u = tableau_matrix(t)
            if dagger:
                u = u.conj().T
            block = psi.reshape(2**j, 4, 2 ** (n - j - 2))
            psi = np.einsum("ab,ibj->iaj", u, block).reshape(dim)
        return psi
