"""Tests for state/observable types, validation, evolution and generation."""

import json

import numpy as np
import pytest
from scipy.linalg import expm

from qcohere import (
    BasisObservable,
    DensityMatrix,
    InvalidRankError,
    NonHermitianError,
    NonSquareError,
    NonUnitaryError,
    NotPositiveSemidefiniteError,
    TraceNotOneError,
    UnitarySignal,
    evolve,
    observable_from_dict,
    observable_to_dict,
    random_basis,
    random_state,
    state_from_dict,
    state_to_dict,
    validate_state,
)


class TestValidation:
    def test_maximally_mixed_passes(self):
        report = validate_state(np.eye(2) / 2)
        assert report.passed
        assert report.herm_violation == 0.0
        assert report.trace_violation == 0.0

    def test_indefinite_matrix_rejected(self):
        # Closed-form 2x2 oracle: eigenvalues of [[a, c], [c, a]] are a +- c,
        # here 1.1 and -0.1.
        entries = [[0.5, 0.6], [0.6, 0.5]]
        report = validate_state(entries)
        assert report.failures == ("not_positive_semidefinite",)
        assert report.min_eigenvalue == pytest.approx(-0.1, abs=1e-12)
        with pytest.raises(NotPositiveSemidefiniteError):
            DensityMatrix(entries)

    def test_non_hermitian_rejected(self):
        entries = [[0.5, 0.5j], [0.5j, 0.5]]
        report = validate_state(entries)
        assert "non_hermitian" in report.failures
        with pytest.raises(NonHermitianError):
            DensityMatrix(entries)

    def test_wrong_trace_rejected(self):
        with pytest.raises(TraceNotOneError):
            DensityMatrix(np.eye(2) * 0.6)

    def test_non_square_rejected(self):
        report = validate_state(np.ones((2, 3)))
        assert report.failures == ("non_square",)
        with pytest.raises(NonSquareError):
            DensityMatrix(np.ones((2, 3)))

    def test_tiny_psd_violation_is_clamped(self):
        # eigenvalues 1 + 1e-9 and -1e-9: inside tol_psd, so the state is
        # accepted with the negative weight clamped away.
        eps = 1e-9
        rho = DensityMatrix([[1.0 + eps, 0.0], [0.0, -eps]])
        w = np.linalg.eigvalsh(rho.matrix)
        assert w[0] >= 0.0
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-15)

    def test_pure_and_diagonal_constructors(self):
        plus = DensityMatrix.plus_state(3)
        assert plus.purity() == pytest.approx(1.0, abs=1e-12)
        diag = DensityMatrix.diagonal([0.7, 0.3])
        assert diag.matrix[0, 0] == 0.7


class TestBasisObservable:
    def test_default_eigenvalue_ladder(self):
        obs = BasisObservable.computational(4)
        assert obs.eigenvalues.tolist() == [1.0, 2.0, 3.0, 4.0]
        assert np.array_equal(obs.basis, np.eye(4))

    def test_linear_matches_ladder(self):
        assert BasisObservable.linear(3).eigenvalues.tolist() == [1.0, 2.0, 3.0]

    def test_non_unitary_rejected(self):
        with pytest.raises(NonUnitaryError):
            BasisObservable([[1.0, 0.0], [1.0, 1.0]])

    def test_hadamard_pair_is_orthonormal(self):
        obs = BasisObservable.hadamard_pair(4, 1, 3)
        assert np.allclose(obs.basis.conj().T @ obs.basis, np.eye(4), atol=1e-12)

    def test_fourier_offset_is_orthonormal(self):
        obs = BasisObservable.fourier(5, offset=0.5)
        assert np.allclose(obs.basis.conj().T @ obs.basis, np.eye(5), atol=1e-12)

    def test_fourier_half_offset_qubit_is_sigma_y_basis(self):
        obs = BasisObservable.fourier(2, offset=0.5)
        expected = np.array([[1.0, 1.0], [1j, -1j]]) / np.sqrt(2)
        assert np.allclose(obs.basis, expected, atol=1e-12)

    def test_observable_matrix(self):
        obs = BasisObservable.computational(2, [1.0, 2.0])
        assert np.allclose(obs.observable_matrix(), np.diag([1.0, 2.0]))

    def test_eigenvalue_length_checked(self):
        with pytest.raises(Exception):
            BasisObservable(np.eye(3), [1.0, 2.0])


class TestEvolve:
    def test_identity_state_is_fixed(self):
        rho = DensityMatrix.maximally_mixed(3)
        signal = UnitarySignal(BasisObservable.linear(3), 0.7)
        assert np.allclose(evolve(rho, signal).matrix, rho.matrix, atol=1e-14)

    def test_zero_signal_is_identity_map(self):
        rho = random_state(4, 3, seed=2)
        signal = UnitarySignal(random_basis(4, seed=3), 0.0)
        assert np.allclose(evolve(rho, signal).matrix, rho.matrix, atol=1e-14)

    def test_plus_state_half_turn(self):
        # rho_01 picks up exp(-i pi (1 - 2)) = exp(i pi) = -1.
        rho = DensityMatrix.plus_state(2)
        signal = UnitarySignal(BasisObservable.computational(2, [1.0, 2.0]), np.pi)
        expected = np.array([[0.5, -0.5], [-0.5, 0.5]])
        assert np.allclose(evolve(rho, signal).matrix, expected, atol=1e-12)

    @pytest.mark.parametrize("lam", [0.3, -1.2, 2 * np.pi, 17.5])
    def test_matches_matrix_exponential_oracle(self, lam):
        rho = random_state(4, 4, seed=7)
        generator = random_basis(4, seed=8, eigenvalues=[0.5, 1.0, 2.5, -3.0])
        evolved = evolve(rho, UnitarySignal(generator, lam))
        u = expm(-1j * lam * generator.observable_matrix())
        oracle = u @ rho.matrix @ u.conj().T
        assert np.allclose(evolved.matrix, oracle, atol=1e-12)

    def test_signal_unitary_is_unitary(self):
        signal = UnitarySignal(random_basis(5, seed=4), 1.234)
        u = signal.unitary()
        assert np.allclose(u @ u.conj().T, np.eye(5), atol=1e-12)

    def test_preserves_invariants(self):
        for i in range(10):
            rho = random_state(3 + i % 4, 1 + i % 3, seed=20 + i)
            generator = random_basis(rho.dim, seed=50 + i)
            evolved = evolve(rho, UnitarySignal(generator, 0.3 + i))
            assert validate_state(evolved.matrix).passed

    def test_composition_law(self):
        rho = random_state(5, 3, seed=31)
        generator = random_basis(5, seed=32)
        one = evolve(evolve(rho, UnitarySignal(generator, 0.4)), UnitarySignal(generator, 1.1))
        two = evolve(rho, UnitarySignal(generator, 1.5))
        assert np.max(np.abs(one.matrix - two.matrix)) <= 1e-10

    def test_diagonal_statistics_invariant(self):
        rho = random_state(6, 6, seed=33)
        generator = random_basis(6, seed=34)
        evolved = evolve(rho, UnitarySignal(generator, 2.2))
        before = rho.in_basis(generator).diagonal().real
        after = evolved.in_basis(generator).diagonal().real
        assert np.max(np.abs(before - after)) <= 1e-12


class TestRandomState:
    def test_rank_one_is_pure(self):
        rho = random_state(2, 1, seed=1)
        assert rho.purity() == pytest.approx(1.0, abs=1e-10)

    def test_full_rank_positive(self):
        rho = random_state(4, 4, seed=1)
        assert np.linalg.eigvalsh(rho.matrix)[0] > 0.0

    def test_invalid_rank(self):
        with pytest.raises(InvalidRankError):
            random_state(3, 5, seed=1)
        with pytest.raises(InvalidRankError):
            random_state(3, 0, seed=1)

    def test_deterministic_given_seed(self):
        a = random_state(4, 2, seed=99)
        b = random_state(4, 2, seed=99)
        assert np.array_equal(a.matrix, b.matrix)

    def test_random_basis_haar_and_deterministic(self):
        a = random_basis(4, seed=5)
        b = random_basis(4, seed=5)
        assert np.array_equal(a.basis, b.basis)
        assert np.allclose(a.basis.conj().T @ a.basis, np.eye(4), atol=1e-12)


class TestSerialization:
    def test_state_roundtrip(self, tmp_path):
        rho = random_state(3, 2, seed=6)
        data = json.loads(json.dumps(state_to_dict(rho)))
        back = state_from_dict(data)
        assert np.allclose(back.matrix, rho.matrix, atol=1e-15)

    def test_observable_roundtrip(self):
        obs = random_basis(3, seed=7, eigenvalues=[0.1, -2.0, 3.5])
        back = observable_from_dict(observable_to_dict(obs))
        assert np.allclose(back.basis, obs.basis, atol=1e-15)
        assert np.array_equal(back.eigenvalues, obs.eigenvalues)

    def test_observable_without_basis_is_computational(self):
        obs = observable_from_dict({"dim": 2, "eigenvalues": [1.0, 2.0]})
        assert np.array_equal(obs.basis, np.eye(2))

    def test_unknown_state_keys_rejected(self):
        with pytest.raises(NonSquareError):
            state_from_dict({"dim": 2, "re": [[1, 0], [0, 0]], "bogus": 1})

    def test_malformed_shapes_rejected(self):
        with pytest.raises(NonSquareError):
            state_from_dict({"dim": 2, "re": [[1, 0, 0], [0, 0, 0]]})
