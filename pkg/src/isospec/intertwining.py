"""Partner operators built from an intertwiner X: H2 -> H1.

Given a Hermitian ``h1`` on H1 commuting with ``N1 = X X^dagger`` and an
invertible ``N2 = X^dagger X``, the partner ``h2 = N2^-1 X^dagger h1 X`` is
Hermitian, satisfies ``X^dagger (X h2 - h1 X) = 0`` and commutes with ``N2``.
Every eigenvector ``phi`` of ``h1`` whose image ``X^dagger phi`` is nonzero
carries its eigenvalue over to ``h2``, so the spectrum of ``h2`` is a
sub-multiset of that of ``h1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CommutatorViolation,
    DimensionMismatch,
    EigenResidualViolation,
    NotInvertible,
    NotTight,
)
from .frames import Frame, analysis_operator, is_tight
from .numerics import (
    DEFAULT_TOL,
    Tolerances,
    adjoint,
    as_matrix,
    as_vector,
    commutator,
    hermitian_eig,
    hermiticity_residual,
    norm,
    relative,
    require_hermitian,
    strict_inverse,
)


@dataclass(frozen=True, eq=False)
class PartnerInput:
    """``h1`` is d1 x d1, ``X`` is d1 x d2 (a map from H2 into H1)."""

    h1: np.ndarray
    X: np.ndarray

    def __post_init__(self):
        h1 = as_matrix(self.h1)
        X = as_matrix(self.X)
        if h1.shape[0] != h1.shape[1]:
            raise DimensionMismatch(f"h1 must be square, got {h1.shape}")
        if X.shape[0] != h1.shape[0]:
            raise DimensionMismatch(f"X has {X.shape[0]} rows but h1 acts on C^{h1.shape[0]}")
        object.__setattr__(self, "h1", h1)
        object.__setattr__(self, "X", X)


@dataclass(frozen=True, eq=False)
class PartnerResult:
    h2: np.ndarray
    n1: np.ndarray
    n2: np.ndarray
    residual_alpha: float
    residual_beta: float
    residual_beta_strong: float
    residual_h2n2: float

    def verdicts(self, tol: Tolerances = DEFAULT_TOL) -> dict[str, bool]:
        return {
            "alpha_hermitian": self.residual_alpha <= tol.hermiticity_tol,
            "beta_weak_intertwining": self.residual_beta <= tol.commutator_tol,
            "h2_commutes_with_n2": self.residual_h2n2 <= tol.commutator_tol,
        }

    def passed(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        return all(self.verdicts(tol).values())


@dataclass
class SpectralReport:
    """Bookkeeping of how the spectrum of h1 carries over to h2.

    ``matched`` holds ``(eigenvalue, multiplicity in h1, multiplicity in h2)``
    for every eigenvalue cluster of h1; ``kept_eigenvectors`` holds
    ``(eigenvalue, index, image norm)`` and ``dropped_eigenvectors`` holds
    ``(eigenvalue, index)`` for eigenvectors of h1 annihilated by X^dagger.
    ``norm_eigenvalues`` holds ``(index, <N1>, <N2>)`` Rayleigh quotients for
    kept eigenvectors of non-degenerate eigenvalues.
    """

    spectrum_h1: np.ndarray
    spectrum_h2: np.ndarray
    matched: list[tuple[float, int, int]]
    unmatched_h2: list[float]
    kept_eigenvectors: list[tuple[float, int, float]] = field(default_factory=list)
    dropped_eigenvectors: list[tuple[float, int]] = field(default_factory=list)
    norm_eigenvalues: list[tuple[int, float, float]] = field(default_factory=list)

    @property
    def included(self) -> bool:
        return not self.unmatched_h2


@dataclass(frozen=True, eq=False)
class OptionChoice:
    """How a tight frame is turned into an intertwiner.

    Option I: H1 = C^n, H2 = coefficient space, ``X = F^dagger``.
    Option II: H1 = coefficient space, H2 = C^n, ``X = F``.
    """

    option: str
    X: np.ndarray
    bound: float
    both_available: bool

    @property
    def h1_space(self) -> str:
        return "H" if self.option == "I" else "coefficients"


def _compatible(inp: PartnerInput, tol: Tolerances):
    h1 = require_hermitian(inp.h1, tol, "h1")
    X = inp.X
    n1 = X @ adjoint(X)
    n2 = adjoint(X) @ X
    c = norm(commutator(n1, h1))
    bound = tol.commutator_tol * norm(n1) * norm(h1)
    if c > bound:
        raise CommutatorViolation(f"||[N1, h1]|| = {c:.3e} exceeds {bound:.3e}")
    try:
        n2_inv = strict_inverse(n2, tol)
    except NotInvertible as exc:
        raise NotInvertible(f"N2 = X^dagger X is singular: {exc}") from None
    return h1, n1, n2, n2_inv


def validate_compatibility(inp: PartnerInput, tol: Tolerances = DEFAULT_TOL):
    """Check ``[N1, h1] = 0`` and invertibility of ``N2``; return ``(N1, N2)``."""
    _, n1, n2, _ = _compatible(inp, tol)
    return n1, n2


def partner_residuals(h1, X, h2) -> dict[str, float]:
    """Relative residuals of the conditions satisfied by a partner ``h2``."""
    Xd = adjoint(X)
    n2 = Xd @ X
    nX, nh1 = norm(X), norm(h1)
    strong = X @ h2 - h1 @ X
    return {
        "residual_alpha": hermiticity_residual(h2),
        "residual_beta": relative(norm(Xd @ strong), nX * nX * nh1),
        "residual_beta_strong": relative(norm(strong), nX * nh1),
        "residual_h2n2": relative(norm(h2 @ n2 - n2 @ h2), norm(h2) * norm(n2)),
    }


def build_partner(inp: PartnerInput, tol: Tolerances = DEFAULT_TOL) -> PartnerResult:
    """``h2 = N2^-1 (X^dagger h1 X)`` together with its verification residuals."""
    h1, n1, n2, n2_inv = _compatible(inp, tol)
    X = inp.X
    h2 = n2_inv @ (adjoint(X) @ h1 @ X)
    return PartnerResult(h2=h2, n1=n1, n2=n2, **partner_residuals(h1, X, h2))


def build_reverse_partner(h2, X, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``h1 = N1^-1 (X h2 X^dagger)`` for Hermitian ``h2`` commuting with ``N2``."""
    h2 = require_hermitian(h2, tol, "h2")
    X = as_matrix(X)
    if X.shape[1] != h2.shape[0]:
        raise DimensionMismatch(f"X has {X.shape[1]} columns but h2 acts on C^{h2.shape[0]}")
    n1 = X @ adjoint(X)
    n2 = adjoint(X) @ X
    c = norm(commutator(h2, n2))
    bound = tol.commutator_tol * norm(h2) * norm(n2)
    if c > bound:
        raise CommutatorViolation(f"||[h2, N2]|| = {c:.3e} exceeds {bound:.3e}")
    try:
        n1_inv = strict_inverse(n1, tol)
    except NotInvertible as exc:
        raise NotInvertible(f"N1 = X X^dagger is singular: {exc}") from None
    return n1_inv @ (X @ h2 @ adjoint(X))


def _clusters(values, atol):
    """Group a descending sequence into runs whose neighbours differ by <= atol."""
    groups = []
    for v in values:
        if groups and abs(groups[-1][-1] - v) <= atol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return groups


def spectral_inclusion(h1, h2, tol: Tolerances = DEFAULT_TOL) -> SpectralReport:
    """Greedy multiset matching of the spectrum of ``h2`` into that of ``h1``."""
    s1 = hermitian_eig(h1, tol).eigenvalues
    s2 = hermitian_eig(h2, tol).eigenvalues
    return _match_spectra(s1, s2, tol)


def _match_spectra(s1, s2, tol: Tolerances) -> SpectralReport:
    atol = tol.eigen_match_tol
    groups = _clusters(s1, atol)
    reps = np.array([np.mean(g) for g in groups])
    capacity = [len(g) for g in groups]
    used = [0] * len(groups)
    unmatched = []
    for e in s2:
        slot = None
        for k in np.argsort(np.abs(reps - e), kind="stable"):
            if abs(reps[k] - e) > atol:
                break
            if used[k] < capacity[k]:
                slot = k
                break
        if slot is None:
            unmatched.append(float(e))
        else:
            used[slot] += 1
    matched = [(float(r), c, u) for r, c, u in zip(reps, capacity, used)]
    return SpectralReport(np.asarray(s1), np.asarray(s2), matched, unmatched)


def transfer_eigenvector(X, h2, phi, eigenvalue: float, tol: Tolerances = DEFAULT_TOL):
    """Image ``X^dagger phi`` of an eigenvector of h1 and whether it is kept.

    The image counts as zero when its norm is at most
    ``zero_vector_tol * ||X|| * ||phi||``. A kept image must satisfy
    ``||h2 v - eigenvalue v|| <= eigen_match_tol * ||v||``.
    """
    X = as_matrix(X)
    phi = as_vector(phi)
    image = adjoint(X) @ phi
    size = np.linalg.norm(image)
    if size <= tol.zero_vector_tol * norm(X) * np.linalg.norm(phi):
        return image, False
    r = np.linalg.norm(h2 @ image - eigenvalue * image)
    if r > tol.eigen_match_tol * size:
        raise EigenResidualViolation(
            f"image of eigenvector with eigenvalue {eigenvalue:.12g} has residual {r:.3e}"
        )
    return image, True


def map_eigenpairs(inp: PartnerInput, result: PartnerResult, tol: Tolerances = DEFAULT_TOL) -> SpectralReport:
    """Push every eigenvector of h1 through ``X^dagger`` and classify it."""
    eig = hermitian_eig(inp.h1, tol)
    report = _match_spectra(eig.eigenvalues, hermitian_eig(result.h2, tol).eigenvalues, tol)
    degeneracy = [len(g) for g in _clusters(eig.eigenvalues, tol.eigen_match_tol) for _ in g]
    for n, (eps, phi) in enumerate(zip(eig.eigenvalues, eig.eigenvectors.T)):
        eps = float(eps)
        image, kept = transfer_eigenvector(inp.X, result.h2, phi, eps, tol)
        if not kept:
            report.dropped_eigenvectors.append((eps, n))
            continue
        report.kept_eigenvectors.append((eps, n, float(np.linalg.norm(image))))
        if degeneracy[n] == 1:
            a1 = np.vdot(phi, result.n1 @ phi).real / np.vdot(phi, phi).real
            a2 = np.vdot(image, result.n2 @ image).real / np.vdot(image, image).real
            report.norm_eigenvalues.append((n, float(a1), float(a2)))
    return report


def option_select(frame: Frame, tol: Tolerances = DEFAULT_TOL) -> OptionChoice:
    """Pick Option I when ``F F^dagger`` is invertible, else Option II."""
    A = is_tight(frame, tol)
    if A is None:
        raise NotTight("frame is not tight")
    F = analysis_operator(frame)
    try:
        strict_inverse(F @ adjoint(F), tol)
    except NotInvertible:
        return OptionChoice("II", F, A, both_available=False)
    return OptionChoice("I", adjoint(F), A, both_available=True)
