"""Operator algebra: type invariants, eigendecomposition, tensor algebra,
operator bases, and seeded sampling."""

import numpy as np
import pytest

import povmkit as pk
from povmkit.errors import (
    BadRank,
    DimensionMismatch,
    NotAnEffect,
    NotAState,
    NotHermitian,
    NotPositive,
    NotUnitary,
)


def random_hermitian(d, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return pk.HermitianOperator((m + m.conj().T) / 2)


class TestTypes:
    def test_hermitian_rejects_asymmetric(self):
        with pytest.raises(NotHermitian):
            pk.HermitianOperator([[0, 1], [0, 0]])

    def test_hermitian_construction_defect_bound(self):
        for seed in range(50):
            h = random_hermitian(4, seed)
            assert np.max(np.abs(h.matrix - h.matrix.conj().T)) <= 1e-10

    def test_density_rejects_negative_and_bad_trace(self):
        with pytest.raises(NotAState):
            pk.DensityOperator([[1.5, 0], [0, -0.5]])
        with pytest.raises(NotAState):
            pk.DensityOperator(np.eye(2))

    def test_effect_range(self):
        pk.Effect(np.eye(2))
        pk.Effect(np.zeros((2, 2)))
        with pytest.raises(NotAnEffect):
            pk.Effect(1.5 * np.eye(2))
        with pytest.raises(NotAnEffect):
            pk.Effect(-0.1 * np.eye(2))

    def test_unitary_validation(self):
        pk.UnitaryOperator(np.eye(3))
        with pytest.raises(NotUnitary):
            pk.UnitaryOperator(2 * np.eye(3))

    def test_matrices_are_frozen(self):
        h = random_hermitian(3, 0)
        with pytest.raises(ValueError):
            h.matrix[0, 0] = 5.0


class TestEigHermitian:
    def test_pauli_z_spectrum(self):
        spec = pk.eig_hermitian(pk.SIGMA_Z)
        assert np.allclose(spec.eigenvalues, [1.0, -1.0])

    def test_maximally_mixed_spectrum(self):
        spec = pk.eig_hermitian(pk.HermitianOperator(np.eye(2) / 2))
        assert np.allclose(spec.eigenvalues, [0.5, 0.5])

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_reconstruction_oracle(self, d):
        for seed in range(250):
            h = random_hermitian(d, 1000 * d + seed)
            spec = pk.eig_hermitian(h)
            scale = max(np.linalg.norm(h.matrix), 1.0)
            assert np.linalg.norm(spec.reconstruct() - h.matrix) <= 1e-9 * scale

    def test_descending_and_orthonormal(self):
        for seed in range(30):
            spec = pk.eig_hermitian(random_hermitian(5, seed))
            assert np.all(np.diff(spec.eigenvalues) <= 1e-12)
            gram = spec.eigenvectors.conj().T @ spec.eigenvectors
            assert np.linalg.norm(gram - np.eye(5)) <= 1e-9

    def test_deterministic_phase(self):
        h = random_hermitian(4, 7)
        a = pk.eig_hermitian(h)
        b = pk.eig_hermitian(h)
        assert np.array_equal(a.eigenvectors, b.eigenvectors)
        for k in range(4):
            col = a.eigenvectors[:, k]
            lead = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
            assert abs(lead.imag) <= 1e-12 and lead.real > 0


class TestOpSqrt:
    def test_identity(self):
        assert np.allclose(pk.op_sqrt(pk.identity(3)).matrix, np.eye(3))

    def test_diagonal(self):
        root = pk.op_sqrt(pk.HermitianOperator(np.diag([4.0, 9.0])))
        assert np.allclose(root.matrix, np.diag([2.0, 3.0]))

    def test_squaring_oracle(self):
        for seed in range(50):
            rho = pk.random_density(4, 4, seed)
            root = pk.op_sqrt(rho)
            assert np.linalg.norm(root.matrix @ root.matrix - rho.matrix) <= 1e-9

    def test_rejects_indefinite(self):
        with pytest.raises(NotPositive):
            pk.op_sqrt(pk.SIGMA_Z)


class TestTensorAndPartialTrace:
    def test_pauli_tensor_spectrum(self):
        joint = pk.tensor(pk.SIGMA_Z, pk.identity(2))
        spec = pk.eig_hermitian(joint)
        assert np.allclose(spec.eigenvalues, [1, 1, -1, -1])

    def test_trace_multiplicativity(self):
        a = random_hermitian(2, 1)
        b = random_hermitian(3, 2)
        assert np.isclose(pk.tensor(a, b).trace(), a.trace() * b.trace())

    def test_product_of_tensors_oracle(self):
        # (a x b)(c x d) must equal (ac) x (bd)
        rng = np.random.default_rng(3)
        for _ in range(20):
            a, b, c, d = (
                rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
                for _ in range(4)
            )
            left = np.kron(a, b) @ np.kron(c, d)
            right = np.kron(a @ c, b @ d)
            assert np.linalg.norm(left - right) <= 1e-10 * max(
                1.0, np.linalg.norm(left)
            )

    def test_kron_layout_left_factor_slow(self):
        a = pk.HermitianOperator(np.diag([1.0, 2.0]))
        b = pk.HermitianOperator(np.diag([3.0, 4.0]))
        assert np.allclose(np.diag(pk.tensor(a, b).matrix), [3, 4, 6, 8])

    def test_product_state_marginal(self):
        rho = pk.random_density(2, 2, 0)
        sigma = pk.random_density(3, 3, 1)
        joint = pk.tensor(rho, sigma)
        kept = pk.partial_trace(joint, (2, 3), "B")
        assert np.linalg.norm(kept.matrix - sigma.matrix) <= 1e-10

    def test_bell_marginal_is_maximally_mixed(self):
        bell = pk.pure_state(np.array([1, 0, 0, 1]) / np.sqrt(2))
        for keep in ("A", "B"):
            marginal = pk.partial_trace(bell, (2, 2), keep)
            assert np.linalg.norm(marginal.matrix - np.eye(2) / 2) <= 1e-10

    def test_trace_preservation(self):
        for seed in range(20):
            x = random_hermitian(6, seed + 100)
            reduced = pk.partial_trace(x, (2, 3), "A")
            assert abs(reduced.trace() - x.trace()) <= 1e-12 * max(
                1.0, abs(x.trace())
            )

    def test_partial_trace_of_product_scales(self):
        for seed in range(10):
            a = random_hermitian(2, seed)
            b = random_hermitian(3, seed + 50)
            got = pk.partial_trace(pk.tensor(a, b), (2, 3), "A")
            assert np.linalg.norm(got.matrix - a.matrix * b.trace()) <= 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            pk.partial_trace(random_hermitian(6, 0), (2, 2), "A")


class TestOperatorBases:
    def test_qubit_basis_is_pauli(self):
        basis = pk.operator_basis(2)
        assert len(basis) == 4
        for m, ref in zip(basis, [np.eye(2), pk.SIGMA_X.matrix,
                                  pk.SIGMA_Y.matrix, pk.SIGMA_Z.matrix]):
            assert np.allclose(m.matrix, ref)
        # tr(sigma_i sigma_j) = 2 delta_ij
        for i in range(1, 4):
            for j in range(1, 4):
                pairing = np.trace(basis[i].matrix @ basis[j].matrix).real
                assert np.isclose(pairing, 2.0 * (i == j), atol=1e-12)

    def test_qutrit_count(self):
        assert len(pk.operator_basis(3)) == 9

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_gram_full_rank(self, d):
        basis = pk.operator_basis(d)
        gram = np.array(
            [
                [np.trace(a.matrix @ b.matrix).real for b in basis]
                for a in basis
            ]
        )
        s = np.linalg.svd(gram, compute_uv=False)
        assert np.sum(s > 1e-8) == d * d

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_spanning_effects_are_informationally_complete(self, d):
        effects = pk.spanning_effects(d)
        assert len(effects) == d * d
        design = np.array(
            [
                [np.trace(e.matrix @ b.matrix).real for b in pk.operator_basis(d)]
                for e in effects
            ]
        )
        s = np.linalg.svd(design, compute_uv=False)
        assert s[-1] > 1e-8


class TestRandomSampling:
    def test_haar_unitary_is_unitary(self):
        for d in (2, 3, 5):
            u = pk.haar_random_unitary(d, seed=d)
            defect = u.matrix.conj().T @ u.matrix - np.eye(d)
            assert np.linalg.norm(defect) <= 1e-9

    def test_haar_determinism(self):
        a = pk.haar_random_unitary(4, seed=123)
        b = pk.haar_random_unitary(4, seed=123)
        assert np.array_equal(a.matrix, b.matrix)

    def test_haar_first_moment_oracle(self):
        # mean |<0|U|0>|^2 = 1/d for Haar U
        d = 2
        n = 100_000
        values = np.empty(n)
        for seed in range(n):
            values[seed] = abs(pk.haar_random_unitary(d, seed).matrix[0, 0]) ** 2
        err = abs(values.mean() - 1.0 / d)
        assert err <= 3 * values.std(ddof=1) / np.sqrt(n)

    def test_random_density_rank_one_is_pure(self):
        rho = pk.random_density(4, 1, seed=0)
        purity = np.trace(rho.matrix @ rho.matrix).real
        assert abs(purity - 1.0) <= 1e-10

    def test_random_density_trace(self):
        rho = pk.random_density(5, 5, seed=1)
        assert abs(np.trace(rho.matrix).real - 1.0) <= 1e-12

    def test_random_density_rank(self):
        for rank in (1, 2, 3):
            rho = pk.random_density(4, rank, seed=rank)
            eigs = np.linalg.eigvalsh(rho.matrix)
            assert np.sum(eigs > 1e-9) == rank

    def test_bad_rank(self):
        with pytest.raises(BadRank):
            pk.random_density(3, 0, seed=0)
        with pytest.raises(BadRank):
            pk.random_density(3, 4, seed=0)

    def test_random_density_determinism(self):
        assert np.array_equal(
            pk.random_density(3, 2, seed=9).matrix,
            pk.random_density(3, 2, seed=9).matrix,
        )


class TestTraceDistance:
    def test_orthogonal_pure_states(self):
        a = pk.pure_state([1, 0])
        b = pk.pure_state([0, 1])
        assert np.isclose(pk.trace_distance(a, b), 1.0)

    def test_identical_states(self):
        rho = pk.random_density(3, 2, 4)
        assert pk.trace_distance(rho, rho) <= 1e-12
