import numpy as np
import numpy.testing as npt
import pytest

from mcamps.pauli import (
    DENSE_QUBIT_CAP,
    PauliString,
    PauliSum,
    SizeMismatchError,
    commutes,
    pauli_mul,
    sum_accumulate,
)

from conftest import dense_string, dense_sum, random_string, random_hermitian_sum


class TestPauliMul:
    def test_single_qubit_table(self):
        X = PauliString.from_label("X")
        Y = PauliString.from_label("Y")
        Z = PauliString.from_label("Z")
        # X * Y = i Z
        prod = pauli_mul(X, Y)
        assert (prod.x_bits, prod.z_bits, prod.phase_exp) == (0, 1, 1)
        # Y * X = -i Z
        prod = pauli_mul(Y, X)
        assert (prod.x_bits, prod.z_bits, prod.phase_exp) == (0, 1, 3)
        # Z * X = i Y
        prod = pauli_mul(Z, X)
        assert (prod.x_bits, prod.z_bits, prod.phase_exp) == (1, 1, 1)
        for p in (X, Y, Z):
            sq = pauli_mul(p, p)
            assert sq.is_identity() and sq.phase_exp == 0

    def test_identity_neutral(self, rng):
        for n in (1, 3, 7):
            ident = PauliString.identity(n)
            for _ in range(20):
                p = random_string(rng, n)
                assert pauli_mul(ident, p) == p
                assert pauli_mul(p, ident) == p

    def test_random_pairs_against_dense(self, rng):
        n = 6
        for _ in range(50):
            a, b = random_string(rng, n), random_string(rng, n)
            prod = pauli_mul(a, b)
            npt.assert_allclose(
                dense_string(prod), dense_string(a) @ dense_string(b), atol=1e-14
            )

    def test_associativity(self, rng):
        n = 5
        for _ in range(50):
            a, b, c = (random_string(rng, n) for _ in range(3))
            assert pauli_mul(a, pauli_mul(b, c)) == pauli_mul(pauli_mul(a, b), c)

    def test_commutation_phase_offset(self, rng):
        n = 6
        for _ in range(100):
            a, b = random_string(rng, n), random_string(rng, n)
            ab, ba = pauli_mul(a, b), pauli_mul(b, a)
            offset = (ab.phase_exp - ba.phase_exp) % 4
            assert offset in (0, 2)
            assert (offset == 0) == commutes(a, b)

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatchError):
            pauli_mul(PauliString.from_label("X"), PauliString.from_label("XX"))
        with pytest.raises(SizeMismatchError):
            commutes(PauliString.from_label("X"), PauliString.from_label("XX"))


class TestCommutes:
    def test_trivial_cases(self):
        X, Z = PauliString.from_label("X"), PauliString.from_label("Z")
        assert not commutes(X, Z)
        assert commutes(X, X)
        XX = PauliString.from_label("XX")
        ZZ = PauliString.from_label("ZZ")
        assert commutes(XX, ZZ)

    def test_against_dense_commutator(self, rng):
        n = 4
        for _ in range(50):
            a, b = random_string(rng, n), random_string(rng, n)
            ma, mb = dense_string(a), dense_string(b)
            comm_norm = np.linalg.norm(ma @ mb - mb @ ma)
            assert commutes(a, b) == (comm_norm < 1e-12)


class TestPauliSumAccumulate:
    def test_exact_cancellation(self):
        s = PauliSum.zero(1)
        s = sum_accumulate(s, PauliString.from_label("Z"), 1.0)
        s = sum_accumulate(s, PauliString.from_label("Z"), -1.0)
        assert len(s) == 0

    def test_merge(self):
        s = PauliSum.zero(1)
        s = sum_accumulate(s, PauliString.from_label("X"), 0.5)
        s = sum_accumulate(s, PauliString.from_label("X"), 0.5)
        assert len(s) == 1
        assert s.coefficient(PauliString.from_label("X")) == pytest.approx(1.0)

    def test_phase_folded_into_coefficient(self):
        # i * (i X Z-letter Y) accumulates onto the plain key
        p = PauliString(2, 0b01, 0b10, 1)
        s = PauliSum.zero(2).add_term(p, 2.0)
        ((q, c),) = list(s.items())
        assert q.phase_exp == 0
        assert c == pytest.approx(2j)

    def test_random_accumulation_against_dense(self, rng):
        n = 5
        s = PauliSum.zero(n)
        dense = np.zeros((2**n, 2**n), dtype=complex)
        for _ in range(60):
            p = random_string(rng, n)
            c = complex(rng.normal(), rng.normal())
            s = sum_accumulate(s, p, c)
            dense += c * dense_string(p)
        npt.assert_allclose(s.to_matrix(), dense, atol=1e-12)

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatchError):
            PauliSum.zero(2).add_term(PauliString.from_label("X"), 1.0)


class TestSumToMatrix:
    def test_empty_sum(self):
        npt.assert_array_equal(PauliSum.zero(2).to_matrix(), np.zeros((4, 4)))

    def test_single_z(self):
        s = PauliSum.from_label_terms({"Z": 1.0})
        npt.assert_allclose(s.to_matrix(), np.diag([1.0, -1.0]), atol=1e-15)

    def test_tfim_n3_hand_assembled(self):
        # H = -ZZI - IZZ - 0.7*(XII + IXI + IIX), assembled by explicit kron
        h = 0.7
        s = PauliSum.from_label_terms(
            {"ZZI": -1.0, "IZZ": -1.0, "XII": -h, "IXI": -h, "IIX": -h}
        )
        I, X, Z = np.eye(2), np.array([[0, 1], [1, 0]]), np.diag([1.0, -1.0])

        def k3(a, b, c):
            return np.kron(np.kron(a, b), c)

        ref = (
            -k3(Z, Z, I) - k3(I, Z, Z) - h * (k3(X, I, I) + k3(I, X, I) + k3(I, I, X))
        )
        npt.assert_allclose(s.to_matrix(), ref, atol=1e-14)
        npt.assert_allclose(
            np.linalg.eigvalsh(s.to_matrix()), np.linalg.eigvalsh(ref), atol=1e-12
        )

    def test_linearity(self, rng):
        n = 6
        s = random_hermitian_sum(rng, n, 12)
        t = random_hermitian_sum(rng, n, 12)
        npt.assert_allclose(
            (s + t).to_matrix(), s.to_matrix() + t.to_matrix(), atol=1e-14
        )

    def test_dense_cap_refusal(self):
        s = PauliSum.identity(DENSE_QUBIT_CAP + 1)
        with pytest.raises(ValueError, match="cap"):
            s.to_matrix()

    def test_matches_independent_kron_oracle(self, rng):
        s = random_hermitian_sum(rng, 5, 20)
        npt.assert_allclose(s.to_matrix(), dense_sum(s), atol=1e-13)


class TestHermiticity:
    def test_hermitian_detection(self, rng):
        s = random_hermitian_sum(rng, 4, 15)
        assert s.is_hermitian()
        m = s.to_matrix()
        npt.assert_allclose(m, m.conj().T, atol=1e-12)

    def test_non_hermitian(self):
        s = PauliSum.from_label_terms({"X": 1.0 + 0.5j})
        assert not s.is_hermitian()


class TestTextDump:
    def test_round_trip(self, rng):
        s = random_hermitian_sum(rng, 4, 10)
        t = PauliSum.from_text(s.to_text())
        assert len(t) == len(s)
        for p, c in s.items():
            assert t.coefficient(p) == pytest.approx(c, abs=1e-15)

    def test_format(self):
        s = PauliSum.from_label_terms({"XZI": 0.5})
        assert s.to_text() == "0.5 0 XZI\n"

    def test_bad_line(self):
        with pytest.raises(ValueError, match="line 1"):
            PauliSum.from_text("0.5 XZI")


class TestLabels:
    def test_label_round_trip(self, rng):
        for _ in range(20):
            p = random_string(rng, 6)
            q = PauliString.from_label(p.label, p.phase_exp)
            assert p == q

    def test_weight(self):
        assert PauliString.from_label("IXYZ").weight == 3
