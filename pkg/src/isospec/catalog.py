"""Named, reproducible scenarios with their expected artifacts.

Each :class:`CatalogEntry` bundles a frame or g-frame, the Hermitian ``h1``,
the intertwiner ``X`` and the values the construction must reproduce. Every
expected value carries a locator naming the worked example it comes from.
:func:`verify_entry` runs the full pipeline and compares.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt
from typing import Callable

import numpy as np

from .frames import Frame, analysis_operator, cross_gram, frame_bounds, frame_operator
from .gframes import (
    GFrame,
    block_hamiltonian,
    composed_gframe,
    g_frame_bounds,
    g_frame_operator,
    projection_gframe,
    stacked_analysis_matrix,
)
from .intertwining import (
    PartnerInput,
    SpectralReport,
    build_partner,
    map_eigenpairs,
    option_select,
    transfer_eigenvector,
    PartnerResult,
)
from .numerics import DEFAULT_TOL, Tolerances, adjoint, hermitian_eig


@dataclass(frozen=True)
class Expected:
    value: object
    locator: str
    atol: float = 1e-10
    audit: bool = False


@dataclass(frozen=True, eq=False)
class EigenvectorCase:
    """An explicit eigenvector of h1 and the image it must have.

    ``image`` is ``None`` when the image must vanish; otherwise the computed
    image is compared to it up to a scalar multiple.
    """

    label: str
    vector: np.ndarray
    eigenvalue: float
    image: np.ndarray | None
    locator: str


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    construction: Frame | GFrame
    h1: np.ndarray
    X: np.ndarray
    expected: dict[str, Expected] = field(default_factory=dict)
    eigenvectors: list[EigenvectorCase] = field(default_factory=list)
    option: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def partner_input(self) -> PartnerInput:
        return PartnerInput(self.h1, self.X)


# -- finite tight frame in C^3 -----------------------------------------------

S2, S3, S5, S6 = sqrt(2), sqrt(3), sqrt(5), sqrt(6)

C3_ANALYSIS = np.array(
    [
        [0, 1 / S3, sqrt(2 / 3)],
        [0, -1 / S3, sqrt(2 / 3)],
        [0, 1, 0],
        [sqrt(5 / 6), 0, 1 / S6],
        [-sqrt(5 / 6), 0, 1 / S6],
    ]
)

C3_H1 = np.array(
    [
        [(43 + 6 * S3) / 15, -14 / 15, 2 / 5 * (-1 + S3), -2 / 5 * (-1 + S3), (1 - 6 * S3) / 15],
        [-14 / 15, (43 - 6 * S3) / 15, -2 / 5 * (1 + S3), 2 / 5 * (1 + S3), (1 + 6 * S3) / 15],
        [2 / 5 * (-1 + S3), -2 / 5 * (1 + S3), 21 / 5, 4 / 5, 4 / 5],
        [-2 / 5 * (-1 + S3), 2 / 5 * (1 + S3), 4 / 5, 11 / 5, -4 / 5],
        [(1 - 6 * S3) / 15, (1 + 6 * S3) / 15, 4 / 5, -4 / 5, 28 / 15],
    ]
)

C3_H2 = np.array([[17 / 6, 0, S5 / 6], [0, 5, 0], [S5 / 6, 0, 13 / 6]])

# alternate normalisation of the fifth vector; the analysis matrix uses 1/sqrt(6)
C3_CHI5_ALTERNATE = np.array([-S5, 0, 1]) / S3

C3_REFERENCE_SPECTRUM_H1 = [5.0, 2 + S5, 3.0, 2.0, 2 - S2]


def example_c3_tight() -> CatalogEntry:
    frame = Frame(C3_ANALYSIS.conj())
    F = analysis_operator(frame)
    loc = "finite example, tight frame in C^3"
    c = (9 + S3) / (3 + 9 * S3)
    cases = [
        EigenvectorCase("phi1", np.array([c, -c, 1, 0, 0]), 5.0, np.array([0, 5 / 3, 0]), loc),
        EigenvectorCase("phi3", -0.5 * np.array([1, 1, 0, 3, -2]), 3.0,
                        -5 / (2 * S6) * np.array([S5, 0, 1]), loc),
        EigenvectorCase("phi4", np.array([1, 1, 0, 0, 1]), 2.0, sqrt(5 / 6) * np.array([-1, 0, S5]), loc),
    ]
    return CatalogEntry(
        name="c3-tight",
        construction=frame,
        h1=C3_H1.astype(complex),
        X=F,
        option="II",
        expected={
            "frame_bounds": Expected((5 / 3, 5 / 3), loc + ": A = 5/3", 1e-12),
            "frame_operator": Expected(5 / 3 * np.eye(3), loc + ": F^dagger F = (5/3) 1", 1e-12),
            "cross_gram_spectrum": Expected([5 / 3] * 3 + [0.0] * 2, loc + ": spectrum of F F^dagger"),
            "option": Expected("II", loc + ": Option II is forced"),
            "h2": Expected(C3_H2, loc + ": h2 = (3/5) F^dagger h1 F"),
            "spectrum_h2": Expected([5.0, 3.0, 2.0], loc + ": spectrum of h2", 1e-9),
            "spectrum_h1": Expected(C3_REFERENCE_SPECTRUM_H1, loc + ": reference spectrum of h1", 1e-9, audit=True),
        },
        eigenvectors=cases,
        notes=[
            "chi_5 is also listed with prefactor 1/sqrt(3); the analysis matrix uses "
            "1/sqrt(6), which is the only choice giving A = 5/3. The matrix is used.",
            "the reference spectrum of h1 lists 2 - sqrt(2); the h1 matrix has 2 - sqrt(5).",
        ],
    )


# -- duplicated orthonormal basis -------------------------------------------

def pair_swap(size: int) -> np.ndarray:
    """Permutation swapping coordinates (0,1), (2,3), ...; ``size`` must be even."""
    if size % 2:
        raise ValueError("pair_swap needs an even size")
    P = np.zeros((size, size))
    for k in range(0, size, 2):
        P[k, k + 1] = P[k + 1, k] = 1.0
    return P


def example_duplicated_basis(N: int = 8, alpha: float = 1.0, beta: float = 0.5) -> CatalogEntry:
    if N < 1:
        raise ValueError("N must be positive")
    vectors = np.repeat(np.eye(N), 2, axis=0) / S2
    frame = Frame(vectors)
    P2 = pair_swap(2 * N)
    h1 = alpha * np.eye(2 * N) + beta * P2
    loc = "duplicated orthonormal basis"
    coeffs = np.arange(1, N + 1, dtype=float)
    phi = np.repeat(coeffs, 2)
    return CatalogEntry(
        name="dup-basis",
        construction=frame,
        h1=h1.astype(complex),
        X=analysis_operator(frame),
        option="II",
        expected={
            "frame_bounds": Expected((1.0, 1.0), loc + ": Parseval frame", 1e-12),
            "cross_gram": Expected(0.5 * (np.eye(2 * N) + P2), loc + ": F F^dagger = (1 + P2)/2", 1e-15),
            "option": Expected("II", loc + ": Option I unavailable"),
            "h2": Expected((alpha + beta) * np.eye(N), loc + ": h2 = (alpha + beta) 1", 1e-12),
        },
        eigenvectors=[
            EigenvectorCase("phi1", phi, alpha + beta, coeffs * S2, loc + ": (c1, c1, c2, c2, ...)"),
            EigenvectorCase("d", np.r_[1.0, -1.0, np.zeros(2 * N - 2)], alpha - beta, None,
                            loc + ": d = (1, -1, 0, ...) in the kernel"),
        ],
    )


# -- multiplicity frame -----------------------------------------------------

def multiplicity_frame(M: int) -> Frame:
    """Level ``j`` (1-based) contributes ``j`` copies of ``e_j / sqrt(j)``."""
    rows = [np.eye(M)[j - 1] / sqrt(j) for j in range(1, M + 1) for _ in range(j)]
    return Frame(np.array(rows))


def multiplicity_h1(alphas, betas=None) -> np.ndarray:
    """Block-diagonal h1 on the coefficient space of the multiplicity frame.

    Level ``j`` gets ``alpha_j`` on the diagonal and ``beta_j`` off it;
    ``betas=None`` gives the diagonal operator. ``betas[0]`` has no effect
    because the first level is one-dimensional.
    """
    alphas = np.asarray(alphas, dtype=float)
    betas = np.zeros_like(alphas) if betas is None else np.asarray(betas, dtype=float)
    M = len(alphas)
    blocks = [alphas[j - 1] * np.eye(j) + betas[j - 1] * (np.ones((j, j)) - np.eye(j)) for j in range(1, M + 1)]
    return block_hamiltonian(blocks)


def example_multiplicity(M: int = 6, alphas=None, betas=None, diagonal: bool = False) -> CatalogEntry:
    """Multiplicity frame with the level-block h1; ``diagonal=True`` zeroes
    the off-diagonal couplings."""
    if M < 1:
        raise ValueError("M must be positive")
    alphas = np.arange(1, M + 1, dtype=float) if alphas is None else np.asarray(alphas, dtype=float)
    if diagonal:
        betas = np.zeros(M)
    elif betas is None:
        betas = 1.0 / np.arange(2, M + 2)
    betas = np.asarray(betas, dtype=float)
    frame = multiplicity_frame(M)
    F = analysis_operator(frame)
    size = len(frame)
    h1 = multiplicity_h1(alphas, betas)
    levels = np.arange(1, M + 1)
    loc = "multiplicity frame"
    cases = []
    if M >= 3:
        def pad(v):
            out = np.zeros(size)
            out[: len(v)] = v
            return out

        e = np.eye(M)
        a, b = alphas, betas
        cases = [
            EigenvectorCase("phi1", pad([1]), a[0], e[0], loc),
            EigenvectorCase("phi2", pad([0, -1, 1]), a[1] - b[1], None, loc),
            EigenvectorCase("phi3", pad([0, 1, 1]), a[1] + b[1], S2 * e[1], loc),
            EigenvectorCase("phi4", pad([0, 0, 0, -1 / S2, 0, 1 / S2]), a[2] - b[2], None, loc),
            EigenvectorCase("phi5", pad([0, 0, 0, -1 / S6, sqrt(2 / 3), -1 / S6]), a[2] - b[2], None, loc),
            EigenvectorCase("phi6", pad([0, 0, 0, 1, 1, 1]) / S3, a[2] + 2 * b[2], e[2], loc),
        ]
    return CatalogEntry(
        name="multiplicity",
        construction=frame,
        h1=h1.astype(complex),
        X=F,
        option="II" if M > 1 else "I",
        expected={
            "frame_bounds": Expected((1.0, 1.0), loc + ": Parseval frame", 1e-12),
            "h2": Expected(np.diag(alphas + (levels - 1) * betas), loc + ": diagonal h2", 1e-12),
        },
        eigenvectors=cases,
    )


# -- orthonormal basis ------------------------------------------------------

def example_orthonormal(N: int = 4, eigenvalues=None, basis=None) -> CatalogEntry:
    """Orthonormal-basis frame with h1 diagonal in that basis (Option I).

    ``basis`` is a unitary whose columns are the frame vectors; the default is
    the canonical basis.
    """
    if N < 1:
        raise ValueError("N must be positive")
    eps = np.arange(N, 0, -1, dtype=float) if eigenvalues is None else np.asarray(eigenvalues, dtype=float)
    U = np.eye(N, dtype=complex) if basis is None else np.asarray(basis, dtype=complex)
    frame = Frame(U.T)
    F = analysis_operator(frame)
    h1 = (U * eps) @ U.conj().T
    loc = "orthonormal basis"
    I = np.eye(N)
    return CatalogEntry(
        name="orthonormal",
        construction=frame,
        h1=h1,
        X=adjoint(F),
        option="I",
        expected={
            "frame_bounds": Expected((1.0, 1.0), loc + ": Parseval", 1e-12),
            "frame_operator": Expected(I, loc + ": F^dagger F = 1", 1e-12),
            "cross_gram": Expected(I, loc + ": F F^dagger = 1", 1e-12),
            "option": Expected("I", loc + ": both options available"),
            "h2": Expected(np.diag(eps), loc + ": (h2 c)_j = eps_j c_j", 1e-10),
        },
        eigenvectors=[
            EigenvectorCase(f"phi{k + 1}", U[:, k], eps[k], I[k], loc + ": canonical coefficient vector")
            for k in range(N)
        ],
    )


# -- projection g-frames ----------------------------------------------------

DEFAULT_PARTITION = ([0], [1, 2], [3, 4, 5])
DEFAULT_ALPHAS = np.array([[1.5, -0.7, 2.25], [0.3, -1.1, 0.8], [4.0, 0.6, 2.9]])
DEFAULT_PROBE = np.array([1.0, 2.0 - 1.0j, -0.5, 1.0j, 3.0, -2.0])


def _partner_blocks(projections, alphas, V=None):
    blocks = []
    for k in range(len(projections)):
        B = np.tensordot(alphas[k], projections, axes=1)
        blocks.append(B if V is None else V @ B @ adjoint(V))
    return blocks


def _check_alphas(alphas, J):
    alphas = np.asarray(alphas, dtype=float)
    if alphas.shape != (J, J):
        raise ValueError(f"alphas must be a {J} x {J} table, got shape {alphas.shape}")
    return alphas


def _block_vector(J, k, v):
    out = np.zeros((J, len(v)), dtype=complex)
    out[k] = v
    return out.reshape(-1)


def example_projection_partition(dim=6, partition=DEFAULT_PARTITION, alphas=DEFAULT_ALPHAS, probe=None) -> CatalogEntry:
    """Projection g-frame; ``alphas[k, j]`` multiplies projection ``j`` in block ``k``."""
    g = projection_gframe(dim, partition)
    J = len(g)
    alphas = _check_alphas(alphas, J)
    P = g.members
    f = (DEFAULT_PROBE if probe is None else np.asarray(probe))[:dim]
    loc = "projection g-frame"
    cases = [EigenvectorCase("block0-cell0", _block_vector(J, 0, P[0] @ f), alphas[0, 0], P[0] @ f,
                             loc + ": (P1 f, 0, ...) kept")]
    if J > 1:
        cases.append(EigenvectorCase("block0-cell1", _block_vector(J, 0, P[1] @ f), alphas[0, 1], None,
                                     loc + ": (P2 f, 0, ...) dropped"))
    return CatalogEntry(
        name="proj-partition",
        construction=g,
        h1=block_hamiltonian(_partner_blocks(P, alphas)),
        X=stacked_analysis_matrix(g),
        expected={
            "frame_bounds": Expected((1.0, 1.0), loc + ": Parseval g-frame", 1e-12),
            "frame_operator": Expected(np.eye(dim), loc + ": S_g = 1", 1e-14),
            "h2": Expected(np.tensordot(np.diag(alphas), P, axes=1), loc + ": h2 = sum_j alpha_j^(j) P_j", 1e-12),
        },
        eigenvectors=cases,
    )


def example_composed(dim=6, partition=DEFAULT_PARTITION, alphas=DEFAULT_ALPHAS, probe=None) -> CatalogEntry:
    """Members ``V P_j`` with V the analysis operator of the multiplicity frame."""
    V = analysis_operator(multiplicity_frame(dim))
    base = projection_gframe(dim, partition)
    g = composed_gframe(V, base)
    J = len(g)
    alphas = _check_alphas(alphas, J)
    P = base.members
    f = (DEFAULT_PROBE if probe is None else np.asarray(probe))[:dim]
    loc = "composed g-frame V P_j"
    return CatalogEntry(
        name="composed",
        construction=g,
        h1=block_hamiltonian(_partner_blocks(P, alphas, V)),
        X=stacked_analysis_matrix(g),
        expected={
            "frame_bounds": Expected((1.0, 1.0), loc + ": V^dagger V = 1", 1e-12),
            "frame_operator": Expected(np.eye(dim), loc + ": S_g = A 1 with A = 1", 1e-12),
            "h2": Expected(np.tensordot(np.diag(alphas), P, axes=1), loc + ": same h2 as the projection g-frame", 1e-10),
        },
        eigenvectors=[
            EigenvectorCase("block0-cell0", _block_vector(J, 0, V @ P[0] @ f), alphas[0, 0], P[0] @ f,
                            loc + ": (F P1 f, 0, ...) kept"),
        ],
    )


CATALOG: dict[str, Callable[[], CatalogEntry]] = {
    "c3-tight": example_c3_tight,
    "dup-basis": example_duplicated_basis,
    "multiplicity": example_multiplicity,
    "orthonormal": example_orthonormal,
    "proj-partition": example_projection_partition,
    "composed": example_composed,
}


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None


# -- verification -----------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    deviation: float
    tolerance: float
    locator: str
    audit: bool = False
    detail: str = ""


def parallel_residual(a, b) -> float:
    """Relative distance of ``a`` from the line spanned by ``b``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return float(na != nb)
    proj = np.vdot(b, a) / nb**2 * b
    return float(np.linalg.norm(a - proj) / na)


def multiset_deviation(actual, expected) -> float:
    actual = np.sort(np.asarray(actual, dtype=float))
    expected = np.sort(np.asarray(expected, dtype=float))
    if actual.shape != expected.shape:
        return float("inf")
    return float(np.max(np.abs(actual - expected))) if actual.size else 0.0


@dataclass
class EntryRun:
    entry: CatalogEntry
    partner: PartnerResult
    report: SpectralReport
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.audit)


def _computed(entry: CatalogEntry, key: str, tol: Tolerances, partner: PartnerResult):
    c = entry.construction
    if key == "frame_bounds":
        return frame_bounds(c, tol) if isinstance(c, Frame) else g_frame_bounds(c, tol)
    if key == "frame_operator":
        return frame_operator(c) if isinstance(c, Frame) else g_frame_operator(c)
    if key == "cross_gram":
        return cross_gram(c)
    if key == "cross_gram_spectrum":
        return hermitian_eig(cross_gram(c), tol).eigenvalues
    if key == "option":
        return option_select(c, tol).option
    if key == "h2":
        return partner.h2
    if key == "spectrum_h2":
        return hermitian_eig(partner.h2, tol).eigenvalues
    if key == "spectrum_h1":
        return hermitian_eig(entry.h1, tol).eigenvalues
    raise KeyError(key)


def verify_entry(entry: CatalogEntry, tol: Tolerances = DEFAULT_TOL) -> EntryRun:
    """Run the construction and compare every expected artifact."""
    partner = build_partner(entry.partner_input, tol)
    report = map_eigenpairs(entry.partner_input, partner, tol)
    checks = []
    for key, exp in entry.expected.items():
        actual = _computed(entry, key, tol, partner)
        if isinstance(exp.value, str):
            ok = actual == exp.value
            checks.append(Check(key, ok, 0.0 if ok else 1.0, 0.0, exp.locator, exp.audit, f"got {actual}"))
            continue
        if key.startswith("spectrum") or key.endswith("spectrum"):
            dev = multiset_deviation(actual, exp.value)
        else:
            dev = float(np.max(np.abs(np.asarray(actual) - np.asarray(exp.value))))
        checks.append(Check(key, dev <= exp.atol, dev, exp.atol, exp.locator, exp.audit))
    for residual, limit in (
        ("residual_alpha", tol.hermiticity_tol),
        ("residual_beta", tol.commutator_tol),
        ("residual_h2n2", tol.commutator_tol),
    ):
        value = getattr(partner, residual)
        checks.append(Check(residual, value <= limit, value, limit, "partner conditions"))
    checks.append(Check("spectral_inclusion", report.included, float(len(report.unmatched_h2)), 0.0,
                        "spectrum of h2 inside spectrum of h1"))
    for case in entry.eigenvectors:
        image, kept = transfer_eigenvector(entry.X, partner.h2, case.vector, case.eigenvalue, tol)
        residual = float(np.linalg.norm(entry.h1 @ case.vector - case.eigenvalue * case.vector))
        checks.append(Check(f"{case.label}:eigenvector_of_h1", residual <= 1e-9 * max(1.0, np.linalg.norm(case.vector)),
                            residual, 1e-9, case.locator))
        if case.image is None:
            dev = float(np.linalg.norm(image))
            checks.append(Check(f"{case.label}:image_vanishes", not kept, dev, tol.zero_vector_tol, case.locator))
        else:
            dev = parallel_residual(image, case.image)
            checks.append(Check(f"{case.label}:image_parallel", kept and dev <= 1e-9, dev, 1e-9, case.locator))
    return EntryRun(entry, partner, report, checks)
