"""Dense complex linear algebra kernel and the tolerance policy.

Operators are plain ``numpy`` arrays of dtype ``complex128``; vectors are
1-D arrays. Norms are Frobenius norms unless stated otherwise.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotInvertible, ShapeError


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used by every check in the package.

    ``hermiticity_tol``, ``commutator_tol`` and ``zero_vector_tol`` are
    relative; ``invertibility_tol`` is the smallest admissible ratio of the
    minimum to the maximum eigenvalue of a positive operator;
    ``eigen_match_tol`` is an absolute eigenvalue gap.
    """

    hermiticity_tol: float = 1e-10
    commutator_tol: float = 1e-10
    invertibility_tol: float = 1e-10
    eigen_match_tol: float = 1e-8
    zero_vector_tol: float = 1e-10

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (0.0 < value < 1.0):
                raise ValueError(f"{f.name} must lie in (0, 1), got {value!r}")

    @classmethod
    def from_env(cls, environ=None, base: Tolerances | None = None) -> Tolerances:
        """Apply ``ISOSPEC_TOL_{HERM,COMM,INV,EIGEN,ZERO}`` overrides."""
        environ = os.environ if environ is None else environ
        base = base or cls()
        overrides = {}
        for key, name in ENV_KEYS.items():
            if key in environ:
                overrides[name] = float(environ[key])
        return replace(base, **overrides)


ENV_KEYS = {
    "ISOSPEC_TOL_HERM": "hermiticity_tol",
    "ISOSPEC_TOL_COMM": "commutator_tol",
    "ISOSPEC_TOL_INV": "invertibility_tol",
    "ISOSPEC_TOL_EIGEN": "eigen_match_tol",
    "ISOSPEC_TOL_ZERO": "zero_vector_tol",
}

DEFAULT_TOL = Tolerances()


class EigenDecomposition(NamedTuple):
    """Eigenvalues sorted descending; column ``k`` of ``eigenvectors`` pairs
    with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def as_matrix(M) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ShapeError("matrix has non-finite entries")
    return A


def as_vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.complex128)
    if a.ndim != 1 or a.size == 0:
        raise ShapeError(f"expected a non-empty 1-D vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ShapeError("vector has non-finite entries")
    return a


def norm(M) -> float:
    return float(np.linalg.norm(M))


def relative(residual: float, scale: float) -> float:
    """``residual / scale``, falling back to the absolute residual when the
    scale vanishes (the zero operator is trivially compliant)."""
    return residual / scale if scale > 0.0 else residual


def inner(f, g) -> complex:
    """``<f, g>``, conjugate-linear in the first argument."""
    return complex(np.vdot(f, g))


def adjoint(M) -> np.ndarray:
    return np.asarray(M).conj().T


def _require_square(M, what="matrix"):
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{what} must be square, got shape {M.shape}")


def hermiticity_residual(M) -> float:
    M = np.asarray(M)
    return relative(norm(M - M.conj().T), norm(M))


def require_hermitian(M, tol: Tolerances = DEFAULT_TOL, what="matrix") -> np.ndarray:
    M = as_matrix(M)
    _require_square(M, what)
    r = hermiticity_residual(M)
    if r > tol.hermiticity_tol:
        raise NotHermitian(f"{what} is not Hermitian (relative residual {r:.3e})")
    return M


def hermitian_eig(M, tol: Tolerances = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Within a degenerate cluster the eigenvectors are an arbitrary orthonormal
    basis of the eigenspace.
    """
    M = require_hermitian(M, tol)
    # symmetrise so LAPACK sees exactly the Hermitian part
    w, U = np.linalg.eigh(0.5 * (M + M.conj().T))
    return EigenDecomposition(w[::-1].copy(), U[:, ::-1].copy())


def strict_inverse(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Inverse of a Hermitian positive semi-definite matrix.

    Raises
    ------
    NotInvertible
        If the smallest eigenvalue does not exceed
        ``invertibility_tol * largest eigenvalue``.
    """
    eig = hermitian_eig(M, tol)
    w, U = eig
    lo, hi = w[-1], w[0]
    if lo <= tol.invertibility_tol * hi:
        raise NotInvertible(
            f"smallest eigenvalue {lo:.3e} is not above "
            f"{tol.invertibility_tol:.1e} x largest eigenvalue {hi:.3e}"
        )
    inv = (U / w) @ U.conj().T
    return 0.5 * (inv + inv.conj().T)


def commutator(A, B) -> np.ndarray:
    A = as_matrix(A)
    B = as_matrix(B)
    _require_square(A, "first operand")
    _require_square(B, "second operand")
    if A.shape != B.shape:
        raise DimensionMismatch(f"commutator of {A.shape} and {B.shape} matrices")
    return A @ B - B @ A


def singular_values(M) -> np.ndarray:
    """Singular values, descending."""
    return np.linalg.svd(as_matrix(M), compute_uv=False)


def nonzero_part(values, atol: float) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    return values[np.abs(values) > atol]
