"""Operator-valued frames (g-frames) and partners on the block space.

A g-frame is a list of operators ``Lambda_j: C^n -> C^m``. Its analysis
operator sends ``f`` to the block vector ``(Lambda_j f)_j`` in the block
space, the direct sum of ``J`` copies of C^m. Index sets are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import block_diag

from .errors import DimensionMismatch, InvalidPartition, NotAFrame, NotIsometryLike, NotTight, ShapeError
from .frames import Frame, FrameBounds, analysis_operator
from .intertwining import PartnerInput, PartnerResult, build_partner
from .numerics import DEFAULT_TOL, Tolerances, as_matrix, as_vector, hermitian_eig, norm, strict_inverse


@dataclass(frozen=True, eq=False)
class GFrame:
    """``members`` has shape ``(J, m, n)``: J operators from C^n to C^m."""

    members: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.members, dtype=np.complex128)
        if M.ndim != 3 or 0 in M.shape:
            raise ShapeError(f"g-frame members must form a (J, m, n) array, got shape {M.shape}")
        if not np.all(np.isfinite(M)):
            raise ShapeError("g-frame members have non-finite entries")
        if not np.any(M):
            raise ShapeError("a g-frame needs at least one nonzero member")
        M = M.copy()
        M.setflags(write=False)
        object.__setattr__(self, "members", M)

    @classmethod
    def from_members(cls, members: Sequence) -> GFrame:
        mats = [as_matrix(m) for m in members]
        if not mats:
            raise ShapeError("a g-frame needs at least one member")
        shapes = {m.shape for m in mats}
        if len(shapes) != 1:
            raise ShapeError(f"g-frame members have differing shapes {sorted(shapes)}")
        return cls(np.stack(mats))

    @property
    def dim_h(self) -> int:
        return self.members.shape[2]

    @property
    def dim_ht(self) -> int:
        return self.members.shape[1]

    def __len__(self):
        return self.members.shape[0]


@dataclass(frozen=True, eq=False)
class BlockVector:
    """Element of the block space; ``blocks`` has shape ``(J, m)``."""

    blocks: np.ndarray

    def __post_init__(self):
        B = np.asarray(self.blocks, dtype=np.complex128)
        if B.ndim != 2:
            raise ShapeError(f"block vector must be a (J, m) array, got shape {B.shape}")
        object.__setattr__(self, "blocks", B)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.blocks) ** 2)))

    def inner(self, other: BlockVector) -> complex:
        """Sum of blockwise inner products, conjugate-linear in ``self``."""
        if self.blocks.shape != other.blocks.shape:
            raise DimensionMismatch(f"block shapes {self.blocks.shape} and {other.blocks.shape}")
        return complex(np.vdot(self.blocks, other.blocks))

    def flat(self) -> np.ndarray:
        return self.blocks.reshape(-1)


def g_analysis(g: GFrame, f) -> BlockVector:
    f = as_vector(f)
    if f.shape[0] != g.dim_h:
        raise DimensionMismatch(f"vector of length {f.shape[0]} for a g-frame on C^{g.dim_h}")
    return BlockVector(g.members @ f)


def g_synthesis(g: GFrame, bv: BlockVector) -> np.ndarray:
    """``sum_j Lambda_j^dagger f_j``."""
    if bv.blocks.shape != (len(g), g.dim_ht):
        raise DimensionMismatch(f"block vector of shape {bv.blocks.shape}, expected {(len(g), g.dim_ht)}")
    return np.einsum("jmn,jm->n", g.members.conj(), bv.blocks)


def g_frame_operator(g: GFrame) -> np.ndarray:
    L = g.members
    return np.einsum("jmk,jmn->kn", L.conj(), L)


def stacked_analysis_matrix(g: GFrame) -> np.ndarray:
    """The analysis operator as one ``(J*m) x n`` matrix."""
    return g.members.reshape(-1, g.dim_h).copy()


def g_frame_bounds(g: GFrame, tol: Tolerances = DEFAULT_TOL) -> FrameBounds:
    w = hermitian_eig(g_frame_operator(g), tol).eigenvalues
    lo, hi = float(w[-1]), float(w[0])
    if lo <= tol.invertibility_tol * hi:
        raise NotAFrame(f"g-frame operator eigenvalues in [{lo:.3e}, {hi:.3e}]")
    return FrameBounds(lo, hi)


def g_tight_bound(g: GFrame, tol: Tolerances = DEFAULT_TOL) -> float | None:
    try:
        lo, hi = g_frame_bounds(g, tol)
    except NotAFrame:
        return None
    return 0.5 * (lo + hi) if hi - lo <= tol.eigen_match_tol * hi else None


def g_dual(g: GFrame, tol: Tolerances = DEFAULT_TOL) -> GFrame:
    """Members ``Lambda_j S_g^-1``."""
    g_frame_bounds(g, tol)
    S_inv = strict_inverse(g_frame_operator(g), tol)
    return GFrame(g.members @ S_inv)


def g_resolutions(g: GFrame, f, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """``(sum_j Lambda_j^dagger dual_j f, sum_j dual_j^dagger Lambda_j f)``."""
    dual = g_dual(g, tol)
    return g_synthesis(g, g_analysis(dual, f)), g_synthesis(dual, g_analysis(g, f))


def classical_gframe(frame: Frame) -> GFrame:
    """The g-frame of 1 x n functionals ``<phi_j, .>``."""
    F = analysis_operator(frame)
    return GFrame(F[:, None, :])


def projection_gframe(dim: int, partition: Sequence[Sequence[int]]) -> GFrame:
    """Diagonal coordinate projections, one per cell of a partition of ``range(dim)``."""
    cells = [list(c) for c in partition]
    seen = [i for c in cells for i in c]
    if not cells or any(not c for c in cells):
        raise InvalidPartition("partition cells must be non-empty")
    if len(seen) != len(set(seen)):
        raise InvalidPartition("partition cells overlap")
    if sorted(seen) != list(range(dim)):
        raise InvalidPartition(f"partition does not cover 0..{dim - 1} exactly")
    members = np.zeros((len(cells), dim, dim), dtype=np.complex128)
    for j, cell in enumerate(cells):
        members[j, cell, cell] = 1.0
    return GFrame(members)


def _is_projection(P, atol) -> bool:
    return P.shape[0] == P.shape[1] and norm(P @ P - P) <= atol and norm(P - P.conj().T) <= atol


def composed_gframe(V, base: GFrame, tol: Tolerances = DEFAULT_TOL) -> GFrame:
    """Members ``V P_j`` for a projection g-frame ``base`` and ``V^dagger V = A 1``."""
    V = as_matrix(V)
    if V.shape[1] != base.dim_h:
        raise DimensionMismatch(f"V has {V.shape[1]} columns, base acts on C^{base.dim_h}")
    if not all(_is_projection(P, tol.hermiticity_tol * max(1.0, norm(P))) for P in base.members):
        raise NotIsometryLike("base g-frame members must be orthogonal projections")
    G = V.conj().T @ V
    A = float(np.trace(G).real) / G.shape[0]
    if A <= 0 or norm(G - A * np.eye(G.shape[0])) > tol.eigen_match_tol * A:
        raise NotIsometryLike("V^dagger V is not a positive multiple of the identity")
    return GFrame(V @ base.members)


def grid_characteristic_gframe(num_cells: int, points_per_cell: int) -> GFrame:
    """Indicator functions of ``num_cells`` equal cells of a uniform grid.

    The real line is replaced by ``num_cells * points_per_cell`` grid points
    with counting measure, so each member is a diagonal 0/1 projection.
    """
    if num_cells < 1 or points_per_cell < 1:
        raise ValueError("num_cells and points_per_cell must be positive")
    p = points_per_cell
    n = num_cells * p
    return projection_gframe(n, [range(j * p, (j + 1) * p) for j in range(num_cells)])


def block_hamiltonian(blocks: Sequence) -> np.ndarray:
    return block_diag(*[as_matrix(b) for b in blocks])


def gframe_partner(g: GFrame, h1_blocks: Sequence, tol: Tolerances = DEFAULT_TOL) -> PartnerResult:
    """Partner of a block-diagonal ``h1`` on the block space, with ``X = F_g``.

    The g-frame must be tight, so that ``N2 = S_g = A 1`` is invertible.
    """
    if len(h1_blocks) != len(g):
        raise DimensionMismatch(f"{len(h1_blocks)} blocks for a g-frame with {len(g)} members")
    if any(np.shape(b) != (g.dim_ht, g.dim_ht) for b in h1_blocks):
        raise DimensionMismatch(f"h1 blocks must all be {g.dim_ht} x {g.dim_ht}")
    if g_tight_bound(g, tol) is None:
        raise NotTight("g-frame is not tight")
    return build_partner(PartnerInput(block_hamiltonian(h1_blocks), stacked_analysis_matrix(g)), tol)
