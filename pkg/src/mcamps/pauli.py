"""N-qubit Pauli strings and weighted Pauli sums in symplectic bit-pair encoding.

A Pauli string is stored as two bit-packed integers (``x_bits``, ``z_bits``)
plus a power of i.  Bit j of each integer describes site j:

    (x, z) = (0, 0) -> I    (1, 0) -> X    (1, 1) -> Y    (0, 1) -> Z

so the operator is ``i**phase_exp * prod_j sigma_j``.  Multiplication and
commutation reduce to word-level XOR/AND/popcount, which keeps the gate
searches performed inside every DMRG step cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

__all__ = [
    "PauliString",
    "PauliSum",
    "pauli_mul",
    "commutes",
    "sum_accumulate",
    "DENSE_QUBIT_CAP",
    "SizeMismatchError",
]

# Largest qubit count for which dense 2^n x 2^n matrices may be materialized.
DENSE_QUBIT_CAP = 14

# Coefficients with magnitude below this are dropped from sums by default.
DEFAULT_DROP_TOL = 1e-12

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}


class SizeMismatchError(ValueError):
    """Raised when two operands act on different qubit counts."""


def _bit_reverse(v: int, n: int) -> int:
    """Reverse the low n bits of v (site 0 becomes the most significant)."""
    return int(format(v, f"0{n}b")[::-1], 2) if n else 0


@dataclass(frozen=True, slots=True)
class PauliString:
    """``i**phase_exp`` times a tensor product of I/X/Y/Z letters."""

    n: int
    x_bits: int
    z_bits: int
    phase_exp: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("bit vectors exceed qubit count")
        if not 0 <= self.phase_exp <= 3:
            object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_label(cls, label: str, phase_exp: int = 0) -> "PauliString":
        """Build from a letter string; label[j] is the letter on site j."""
        x = z = 0
        for j, letter in enumerate(label):
            try:
                xb, zb = _LETTER_BITS[letter]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {letter!r}") from None
            x |= xb << j
            z |= zb << j
        return cls(len(label), x, z, phase_exp % 4)

    @classmethod
    def single(cls, n: int, site: int, letter: str) -> "PauliString":
        xb, zb = _LETTER_BITS[letter]
        if not 0 <= site < n:
            raise ValueError("site out of range")
        return cls(n, xb << site, zb << site, 0)

    @property
    def label(self) -> str:
        return "".join(
            _BITS_LETTER[(self.x_bits >> j & 1, self.z_bits >> j & 1)]
            for j in range(self.n)
        )

    @property
    def weight(self) -> int:
        """Number of non-identity sites."""
        return (self.x_bits | self.z_bits).bit_count()

    def phase(self) -> complex:
        return (1j) ** self.phase_exp

    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    def to_matrix(self) -> np.ndarray:
        """Dense matrix with site 0 as the most significant tensor factor."""
        if self.n > DENSE_QUBIT_CAP:
            raise ValueError(
                f"refusing dense matrix for n={self.n} > cap {DENSE_QUBIT_CAP}"
            )
        dim = 1 << self.n
        mat = np.zeros((dim, dim), dtype=complex)
        rows, cols, vals = _string_action(self.n, self.x_bits, self.z_bits)
        mat[rows, cols] = vals * (1j) ** self.phase_exp
        return mat

    def __repr__(self):
        pre = ["", "i*", "-", "-i*"][self.phase_exp]
        return f"PauliString({pre}{self.label or 'I'})"


def _string_action(n: int, x: int, z: int):
    """Column action of the letter string: rows, cols, values arrays.

    The letter string equals i**popcount(x&z) * X^x Z^z, whose action on a
    basis state |b> is (-1)**popcount(z&b) |b xor x>.
    """
    dim = 1 << n
    cols = np.arange(dim, dtype=np.int64)
    xr = _bit_reverse(x, n)
    zr = _bit_reverse(z, n)
    rows = cols ^ xr
    signs = 1.0 - 2.0 * (np.bitwise_count(cols & zr) & 1)
    y_count = (x & z).bit_count()
    vals = signs * (1j) ** (y_count % 4)
    return rows, cols, vals


def pauli_mul(a: PauliString, b: PauliString) -> PauliString:
    """Product a*b with the accumulated power of i."""
    if a.n != b.n:
        raise SizeMismatchError(f"qubit counts differ: {a.n} != {b.n}")
    x3 = a.x_bits ^ b.x_bits
    z3 = a.z_bits ^ b.z_bits
    # per-site phase of sigma(x1,z1)*sigma(x2,z2), summed over sites
    g = (
        (a.x_bits & a.z_bits).bit_count()
        + (b.x_bits & b.z_bits).bit_count()
        + 2 * (a.z_bits & b.x_bits).bit_count()
        - (x3 & z3).bit_count()
    )
    return PauliString(a.n, x3, z3, (a.phase_exp + b.phase_exp + g) % 4)


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff the symplectic inner product of a and b is zero."""
    if a.n != b.n:
        raise SizeMismatchError(f"qubit counts differ: {a.n} != {b.n}")
    anti = (a.x_bits & b.z_bits).bit_count() + (a.z_bits & b.x_bits).bit_count()
    return anti % 2 == 0


class PauliSum:
    """Weighted sum of Pauli strings with phase-normalized keys.

    Keys are (x_bits, z_bits) pairs denoting the plain letter string
    (phase_exp = 0); any power of i is folded into the complex coefficient.
    A Hermitian sum therefore has real coefficients.  Instances are
    immutable from the caller's perspective: every operation returns a new
    sum.
    """

    __slots__ = ("n", "drop_tol", "_terms")

    def __init__(self, n: int, drop_tol: float = DEFAULT_DROP_TOL):
        self.n = n
        self.drop_tol = drop_tol
        self._terms: dict[tuple[int, int], complex] = {}

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, n: int, drop_tol: float = DEFAULT_DROP_TOL) -> "PauliSum":
        return cls(n, drop_tol)

    @classmethod
    def from_terms(
        cls,
        n: int,
        terms: Iterable[tuple[PauliString, complex]],
        drop_tol: float = DEFAULT_DROP_TOL,
    ) -> "PauliSum":
        out = cls(n, drop_tol)
        acc = out._terms
        for p, c in terms:
            if p.n != n:
                raise SizeMismatchError(f"term acts on {p.n} qubits, sum on {n}")
            _accumulate(acc, p, c)
        _prune(acc, drop_tol)
        return out

    @classmethod
    def from_label_terms(
        cls,
        terms: Mapping[str, complex] | Iterable[tuple[str, complex]],
        drop_tol: float = DEFAULT_DROP_TOL,
    ) -> "PauliSum":
        items = terms.items() if isinstance(terms, Mapping) else list(terms)
        items = list(items)
        if not items:
            raise ValueError("cannot infer qubit count from empty term list")
        n = len(items[0][0])
        return cls.from_terms(
            n, ((PauliString.from_label(lbl), c) for lbl, c in items), drop_tol
        )

    @classmethod
    def _from_raw(
        cls,
        n: int,
        raw: dict[tuple[int, int], complex],
        drop_tol: float = DEFAULT_DROP_TOL,
    ) -> "PauliSum":
        """Adopt a pre-normalized key->coefficient dict (internal)."""
        out = cls(n, drop_tol)
        _prune(raw, drop_tol)
        out._terms = raw
        return out

    @classmethod
    def identity(cls, n: int, coeff: complex = 1.0) -> "PauliSum":
        return cls._from_raw(n, {(0, 0): complex(coeff)})

    # -- inspection ---------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    def items(self) -> Iterator[tuple[PauliString, complex]]:
        for (x, z), c in self._terms.items():
            yield PauliString(self.n, x, z, 0), c

    def coefficient(self, p: PauliString) -> complex:
        if p.n != self.n:
            raise SizeMismatchError(f"qubit counts differ: {p.n} != {self.n}")
        c = self._terms.get((p.x_bits, p.z_bits), 0.0)
        # undo the phase the caller attached to the key
        return c * (1j) ** (-p.phase_exp % 4)

    def is_hermitian(self, atol: float = 1e-10) -> bool:
        return all(abs(c.imag) <= atol for c in self._terms.values())

    def frobenius_norm(self) -> float:
        """Norm of the dense matrix divided by 2^(n/2); exact for Pauli sums."""
        return float(np.sqrt(sum(abs(c) ** 2 for c in self._terms.values())))

    # -- algebra ------------------------------------------------------

    def add_term(self, p: PauliString, c: complex) -> "PauliSum":
        """Return a new sum with c * p merged in."""
        if p.n != self.n:
            raise SizeMismatchError(f"term acts on {p.n} qubits, sum on {self.n}")
        raw = dict(self._terms)
        _accumulate(raw, p, c)
        return PauliSum._from_raw(self.n, raw, self.drop_tol)

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if not isinstance(other, PauliSum):
            return NotImplemented
        if other.n != self.n:
            raise SizeMismatchError(f"qubit counts differ: {other.n} != {self.n}")
        raw = dict(self._terms)
        for k, c in other._terms.items():
            raw[k] = raw.get(k, 0.0) + c
        return PauliSum._from_raw(self.n, raw, self.drop_tol)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "PauliSum":
        scalar = complex(scalar)
        raw = {k: scalar * c for k, c in self._terms.items()}
        return PauliSum._from_raw(self.n, raw, self.drop_tol)

    def to_matrix(self) -> np.ndarray:
        """Dense Hermitian-sized matrix sum_i a_i P_i (site 0 most significant)."""
        if self.n > DENSE_QUBIT_CAP:
            raise ValueError(
                f"refusing dense matrix for n={self.n} > cap {DENSE_QUBIT_CAP}"
            )
        dim = 1 << self.n
        mat = np.zeros((dim, dim), dtype=complex)
        for (x, z), c in self._terms.items():
            rows, cols, vals = _string_action(self.n, x, z)
            mat[rows, cols] += c * vals
        return mat

    # -- text dump ----------------------------------------------------

    def to_text(self) -> str:
        """One term per line: '<re> <im> <label>', sorted by label."""
        lines = []
        for (x, z), c in sorted(self._terms.items()):
            label = PauliString(self.n, x, z, 0).label
            lines.append(f"{c.real:.17g} {c.imag:.17g} {label}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str, drop_tol: float = DEFAULT_DROP_TOL) -> "PauliSum":
        terms = []
        n = None
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected '<re> <im> <label>'")
            re_s, im_s, label = parts
            if n is None:
                n = len(label)
            elif len(label) != n:
                raise ValueError(f"line {lineno}: inconsistent label length")
            terms.append((PauliString.from_label(label), float(re_s) + 1j * float(im_s)))
        if n is None:
            raise ValueError("empty Pauli sum dump")
        return cls.from_terms(n, terms, drop_tol)

    def __repr__(self):
        return f"PauliSum(n={self.n}, terms={len(self._terms)})"


def _accumulate(raw: dict, p: PauliString, c: complex) -> None:
    key = (p.x_bits, p.z_bits)
    raw[key] = raw.get(key, 0.0) + complex(c) * (1j) ** p.phase_exp


def _prune(raw: dict, drop_tol: float) -> None:
    dead = [k for k, c in raw.items() if abs(c) < drop_tol]
    for k in dead:
        del raw[k]


def sum_accumulate(s: PauliSum, p: PauliString, c: complex) -> PauliSum:
    """Merge c * p into s, returning a new sum (s is not modified)."""
    return s.add_term(p, c)
