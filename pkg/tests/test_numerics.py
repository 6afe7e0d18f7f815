import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isospec.catalog import C3_ANALYSIS
from isospec.errors import DimensionMismatch, NotHermitian, NotInvertible, ShapeError
from isospec.numerics import (
    DEFAULT_TOL,
    Tolerances,
    adjoint,
    as_matrix,
    commutator,
    hermitian_eig,
    singular_values,
    strict_inverse,
)

from conftest import random_complex, random_hermitian

F = C3_ANALYSIS
S = np.sqrt


def test_default_tolerances():
    assert DEFAULT_TOL == Tolerances(1e-10, 1e-10, 1e-10, 1e-8, 1e-10)


@pytest.mark.parametrize("bad", [0.0, 1.0, -1e-3, 2.0])
def test_tolerances_must_be_in_open_unit_interval(bad):
    with pytest.raises(ValueError):
        Tolerances(eigen_match_tol=bad)


def test_tolerances_from_env():
    tol = Tolerances.from_env({"ISOSPEC_TOL_EIGEN": "1e-6", "ISOSPEC_TOL_ZERO": "1e-9"})
    assert tol.eigen_match_tol == 1e-6
    assert tol.zero_vector_tol == 1e-9
    assert tol.commutator_tol == 1e-10


def test_as_matrix_rejects_nan():
    with pytest.raises(ShapeError):
        as_matrix([[1.0, np.nan]])


# adjoint


def test_adjoint_of_real_diagonal_is_itself():
    D = np.diag([3.0, -1.0, 2.5])
    assert np.array_equal(adjoint(D), D)


def test_adjoint_of_c3_analysis_is_reference_synthesis():
    reference = np.array(
        [
            [0, 0, 0, S(5 / 6), -S(5 / 6)],
            [1 / S(3), -1 / S(3), 1, 0, 0],
            [S(2 / 3), S(2 / 3), 0, 1 / S(6), 1 / S(6)],
        ]
    )
    assert np.allclose(adjoint(F), reference, atol=1e-15, rtol=0)


def test_adjoint_involution_exact(rng):
    M = random_complex(rng, 4, 7)
    assert np.array_equal(adjoint(adjoint(M)), M)


def test_adjoint_inner_product_oracle(rng):
    M = random_complex(rng, 5, 3)
    f, g = random_complex(rng, 3), random_complex(rng, 5)
    lhs = np.sum(np.conj(M @ f) * g)
    rhs = np.sum(np.conj(f) * (adjoint(M) @ g))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


# hermitian_eig


def test_eig_diagonal():
    eig = hermitian_eig(np.diag([1.0, 2.0]))
    assert np.array_equal(eig.eigenvalues, [2.0, 1.0])


def test_eig_cross_gram_of_c3_frame():
    w = hermitian_eig(F @ F.T).eigenvalues
    assert np.allclose(w, [5 / 3] * 3 + [0, 0], atol=1e-12, rtol=0)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_eig_rejects_non_square():
    with pytest.raises(DimensionMismatch):
        hermitian_eig(np.ones((2, 3)))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 64))
def test_eig_reconstruction_and_orthonormality(seed, n):
    M = random_hermitian(np.random.default_rng(seed), n)
    eig = hermitian_eig(M)
    U = eig.eigenvectors
    assert np.all(np.diff(eig.eigenvalues) <= 0)
    assert np.linalg.norm(U.conj().T @ U - np.eye(n)) <= 1e-12 * max(1, n)
    assert np.linalg.norm(eig.reconstruct() - M) <= 1e-12 * np.linalg.norm(M)


# strict_inverse


def test_inverse_identity():
    assert np.allclose(strict_inverse(np.eye(4)), np.eye(4), atol=1e-15)


def test_inverse_of_c3_frame_operator():
    assert np.allclose(strict_inverse(F.T @ F), 0.6 * np.eye(3), atol=1e-14)


def test_cross_gram_of_c3_frame_is_not_invertible():
    with pytest.raises(NotInvertible):
        strict_inverse(F @ F.T)


def test_inverse_of_zero_matrix():
    with pytest.raises(NotInvertible):
        strict_inverse(np.zeros((2, 2)))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 24))
def test_inverse_both_sides(seed, n):
    rng = np.random.default_rng(seed)
    A = random_complex(rng, n + 3, n)
    M = A.conj().T @ A
    inv = strict_inverse(M)
    assert np.array_equal(inv, inv.conj().T)
    assert np.linalg.norm(inv @ M - np.eye(n)) <= 1e-10
    assert np.linalg.norm(M @ inv - np.eye(n)) <= 1e-10


# commutator


def test_self_commutator_is_zero(rng):
    A = random_complex(rng, 5, 5)
    assert not np.any(commutator(A, A))


def test_c3_h1_commutes_with_cross_gram():
    from isospec.catalog import C3_H1

    assert np.linalg.norm(commutator(C3_H1, F @ F.T)) <= 1e-10


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12))
def test_commutator_antisymmetric_exactly(seed, n):
    rng = np.random.default_rng(seed)
    A, B = random_complex(rng, n, n), random_complex(rng, n, n)
    assert np.array_equal(commutator(A, B), -commutator(B, A))


def test_commutator_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        commutator(np.eye(2), np.eye(3))


# singular values


def test_singular_values_identity():
    assert np.allclose(singular_values(np.eye(5)), np.ones(5))


def test_singular_values_of_c3_analysis():
    assert np.allclose(singular_values(F), [S(5 / 3)] * 3, atol=1e-12, rtol=0)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 10), n=st.integers(1, 10))
def test_singular_values_against_gram_eigenvalues(seed, m, n):
    rng = np.random.default_rng(seed)
    M = random_complex(rng, m, n)
    s = singular_values(M)
    assert np.all(np.diff(s) <= 0)
    gram = np.sort(np.linalg.eigvalsh(M.conj().T @ M))[::-1]
    assert np.allclose(s**2, gram[: len(s)], atol=1e-10 * max(1, gram[0]), rtol=0)
    # nonzero parts of M^dagger M and M M^dagger agree
    other = np.sort(np.linalg.eigvalsh(M @ M.conj().T))[::-1]
    k = min(m, n)
    assert np.allclose(gram[:k], other[:k], atol=DEFAULT_TOL.eigen_match_tol * max(1, gram[0]), rtol=0)
    assert np.allclose(singular_values(adjoint(M)), s, atol=1e-10, rtol=0)
