"""Finite frames in C^n: analysis/synthesis operators, bounds, duals and
reconstruction.

Inner products are conjugate-linear in the first argument, so row ``j`` of the
analysis operator is the conjugate of the ``j``-th frame vector and
``(F f)_j = <phi_j, f>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotAFrame, ShapeError
from .numerics import DEFAULT_TOL, Tolerances, as_matrix, as_vector, hermitian_eig, strict_inverse


@dataclass(frozen=True, eq=False)
class Frame:
    """An ordered list of vectors in C^dim, stored as the rows of ``vectors``.

    Order matters: eigenvector images in the intertwining construction are
    indexed by frame position.
    """

    vectors: np.ndarray

    def __post_init__(self):
        V = as_matrix(self.vectors).copy()
        if not np.any(V):
            raise ShapeError("a frame needs at least one nonzero vector")
        V.setflags(write=False)
        object.__setattr__(self, "vectors", V)

    @classmethod
    def from_vectors(cls, vectors, dim: int | None = None) -> Frame:
        rows = [as_vector(v) for v in vectors]
        if not rows:
            raise ShapeError("a frame needs at least one vector")
        lengths = {len(r) for r in rows}
        if len(lengths) != 1 or (dim is not None and lengths != {dim}):
            raise ShapeError(f"frame vectors have inconsistent lengths {sorted(lengths)}")
        return cls(np.vstack(rows))

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self):
        return self.vectors.shape[0]

    def __getitem__(self, i):
        return self.vectors[i]

    def __iter__(self):
        return iter(self.vectors)


class FrameBounds(NamedTuple):
    lower: float
    upper: float


def analysis_operator(frame: Frame) -> np.ndarray:
    """The m x n matrix F with ``(F f)_j = <phi_j, f>``."""
    return frame.vectors.conj()


def synthesis_operator(frame: Frame) -> np.ndarray:
    """The n x m matrix F^dagger with ``F^dagger c = sum_i c_i phi_i``."""
    return frame.vectors.T.copy()


def frame_operator(frame: Frame) -> np.ndarray:
    F = analysis_operator(frame)
    return F.conj().T @ F


def cross_gram(frame: Frame) -> np.ndarray:
    """F F^dagger; entry (j, k) is ``<phi_j, phi_k>``."""
    F = analysis_operator(frame)
    return F @ F.conj().T


def frame_bounds(frame: Frame, tol: Tolerances = DEFAULT_TOL) -> FrameBounds:
    """Optimal frame bounds: the extreme eigenvalues of the frame operator."""
    w = hermitian_eig(frame_operator(frame), tol).eigenvalues
    lo, hi = float(w[-1]), float(w[0])
    if lo <= tol.invertibility_tol * hi:
        raise NotAFrame(
            f"{len(frame)} vectors do not span C^{frame.dim} "
            f"(frame operator eigenvalues in [{lo:.3e}, {hi:.3e}])"
        )
    return FrameBounds(lo, hi)


def is_tight(frame: Frame, tol: Tolerances = DEFAULT_TOL) -> float | None:
    """Return the tight bound A if ``F^dagger F = A 1``, else ``None``."""
    try:
        lo, hi = frame_bounds(frame, tol)
    except NotAFrame:
        return None
    if hi - lo <= tol.eigen_match_tol * hi:
        return 0.5 * (lo + hi)
    return None


def dual_frame(frame: Frame, tol: Tolerances = DEFAULT_TOL) -> Frame:
    frame_bounds(frame, tol)
    S_inv = strict_inverse(frame_operator(frame), tol)
    # row i becomes (S^-1 phi_i)^T
    return Frame(frame.vectors @ S_inv.T)


def reconstruct(frame: Frame, f, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Both reconstruction sums of ``f``.

    Returns ``(sum_i <phi_i, f> dual_i, sum_i <dual_i, f> phi_i)``.
    """
    f = as_vector(f)
    if f.shape[0] != frame.dim:
        raise ShapeError(f"vector of length {f.shape[0]} in a frame of C^{frame.dim}")
    dual = dual_frame(frame, tol)
    via_dual_vectors = synthesis_operator(dual) @ (analysis_operator(frame) @ f)
    via_dual_coefficients = synthesis_operator(frame) @ (analysis_operator(dual) @ f)
    return via_dual_vectors, via_dual_coefficients
