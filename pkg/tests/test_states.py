"""Tests for density matrices, Bloch vectors and random state sampling."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmetric import states
from qmetric.errors import BadRank, BadShape, DimensionTooSmall, InvalidState, NotPositive, ZeroVector


class TestMakeDensity:
    def test_maximally_mixed(self):
        rho = states.make_density(np.eye(2) / 2)
        assert rho.dim == 2
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2)

    def test_diagonal(self):
        states.make_density(np.diag([0.7, 0.3]))

    @pytest.mark.parametrize("matrix, reason", [
        (np.diag([1.2, -0.2]), "NotPSD"),
        (np.diag([0.5, 0.4]), "TraceNotOne"),
        (np.array([[0.5, 0.3], [0.0, 0.5]]), "NonHermitian"),
    ])
    def test_rejections(self, matrix, reason):
        with pytest.raises(InvalidState) as info:
            states.make_density(matrix)
        assert info.value.reason == reason
        assert info.value.residual > 0

    def test_not_square(self):
        with pytest.raises(InvalidState) as info:
            states.make_density(np.ones((2, 3)) / 2)
        assert info.value.reason == "NotSquare"

    def test_matrix_is_read_only(self):
        rho = states.make_density(np.eye(2) / 2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestGellMann:
    def test_qubit_is_pauli(self):
        g = states.gell_mann_basis(2).generators
        x = np.array([[0, 1], [1, 0]])
        y = np.array([[0, -1j], [1j, 0]])
        z = np.diag([1, -1])
        np.testing.assert_allclose(g, [x, y, z], atol=1e-15)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_orthogonality(self, n):
        g = states.gell_mann_basis(n).generators
        assert len(g) == n * n - 1
        gram = np.einsum("aij,bji->ab", g, g)
        np.testing.assert_allclose(gram, 2 * np.eye(n * n - 1), atol=1e-12)
        np.testing.assert_allclose(np.einsum("aii->a", g), 0, atol=1e-12)
        np.testing.assert_allclose(g, np.conj(np.transpose(g, (0, 2, 1))), atol=1e-15)

    def test_too_small(self):
        with pytest.raises(DimensionTooSmall):
            states.gell_mann_basis(1)


class TestBloch:
    def test_origin_is_maximally_mixed(self):
        rho = states.bloch_to_density(states.BlochState(2, np.zeros(3)))
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-15)

    def test_pole(self):
        rho = states.bloch_to_density(states.BlochState(2, np.array([0.0, 0.0, 1.0])))
        np.testing.assert_allclose(rho.matrix, np.diag([1.0, 0.0]), atol=1e-15)

    def test_qutrit_symmetric_axis_not_positive(self):
        u = np.zeros(8)
        u[0] = 1.0
        with pytest.raises(NotPositive) as info:
            states.bloch_to_density(states.BlochState(3, u))
        assert info.value.min_eigenvalue < 0

    def test_inverse_cases(self):
        np.testing.assert_allclose(states.density_to_bloch(states.maximally_mixed(4)).coeffs, 0, atol=1e-15)
        pole = states.density_to_bloch(states.make_density(np.diag([1.0, 0.0])))
        np.testing.assert_allclose(pole.coeffs, [0, 0, 1], atol=1e-15)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_roundtrip(self, n, rng):
        for _ in range(20):
            rho = states.random_density(n, seed=rng)
            back = states.bloch_to_density(states.density_to_bloch(rho))
            np.testing.assert_allclose(back.matrix, rho.matrix, atol=1e-10)

    def test_pure_states_on_unit_sphere(self, rng):
        for n in (2, 3, 4):
            u = states.density_to_bloch(states.random_density(n, 1, rng))
            np.testing.assert_allclose(np.linalg.norm(u.coeffs), 1.0, atol=1e-10)

    def test_shape_validation(self):
        with pytest.raises(BadShape):
            states.BlochState(2, np.zeros(4))
        with pytest.raises(BadShape):
            states.BlochState(2, np.array([0.0, 0.0, 1.5]))


class TestPurity:
    def test_pure(self, rng):
        np.testing.assert_allclose(states.purity(states.random_density(3, 1, rng)), 1.0, atol=1e-12)

    def test_maximally_mixed(self):
        np.testing.assert_allclose(states.purity(states.maximally_mixed(5)), 0.2, atol=1e-15)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0, 1), st.floats(0, np.pi), st.floats(0, 2 * np.pi))
    def test_qubit_radius(self, r, theta, phi):
        u = r * np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
        rho = states.bloch_to_density(states.BlochState(2, u))
        np.testing.assert_allclose(states.purity(rho), (1 + r * r) / 2, atol=1e-12)


class TestRandomDensity:
    @pytest.mark.parametrize("n, rank", [(2, 1), (3, 2), (4, 4), (6, None)])
    def test_valid_with_rank(self, n, rank):
        rho = states.random_density(n, rank, seed=3)
        w = np.linalg.eigvalsh(rho.matrix)
        np.testing.assert_allclose(np.trace(rho.matrix).real, 1.0, atol=1e-12)
        assert w.min() >= -1e-12
        assert np.sum(w > 1e-10) == (rank or n)

    def test_seed_determinism(self):
        a = states.random_density(4, 2, seed=11)
        b = states.random_density(4, 2, seed=11)
        np.testing.assert_array_equal(a.matrix, b.matrix)

    @pytest.mark.parametrize("rank", [0, 5])
    def test_bad_rank(self, rank):
        with pytest.raises(BadRank):
            states.random_density(4, rank, seed=0)


class TestPureFromVector:
    def test_basis_vector(self):
        np.testing.assert_allclose(states.pure_from_vector([1, 0]).matrix, np.diag([1.0, 0.0]))

    def test_normalizes(self):
        np.testing.assert_allclose(states.pure_from_vector([2, 0]).matrix, np.diag([1.0, 0.0]))

    def test_example1_state(self, ex1):
        rho = states.pure_from_vector([np.sqrt(3) / 2, 0, 0, 0.5])
        np.testing.assert_allclose(rho.matrix, ex1[0].matrix, atol=1e-15)

    def test_zero(self):
        with pytest.raises(ZeroVector):
            states.pure_from_vector([0, 0, 0])
