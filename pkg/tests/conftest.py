import numpy as np
import pytest


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, n):
    A = random_complex(rng, n, n)
    return 0.5 * (A + A.conj().T)


def random_unitary(rng, n):
    Q, R = np.linalg.qr(random_complex(rng, n, n))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_isometry_like(rng, d1, d2, singular_values=None):
    """d1 x d2 matrix (d1 >= d2) with prescribed or random singular values in [0.25, 2]."""
    s = rng.uniform(0.25, 2.0, d2) if singular_values is None else np.asarray(singular_values)
    U = random_unitary(rng, d1)[:, :d2]
    V = random_unitary(rng, d2)
    return (U * s) @ V.conj().T


def random_commuting_h1(rng, X, rel_gap=1e-8):
    """Random Hermitian h1 commuting with N1 = X X^dagger.

    Built in the eigenbasis of N1: an independent random Hermitian block on
    every eigenvalue cluster of N1.
    """
    n1 = X @ X.conj().T
    w, U = np.linalg.eigh(n1)
    scale = max(abs(w).max(), 1.0)
    blocks, start = [], 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] - w[k - 1] > rel_gap * scale:
            blocks.append(random_hermitian(rng, k - start))
            start = k
    D = np.zeros((len(w), len(w)), dtype=complex)
    pos = 0
    for B in blocks:
        D[pos:pos + len(B), pos:pos + len(B)] = B
        pos += len(B)
    h1 = U @ D @ U.conj().T
    return 0.5 * (h1 + h1.conj().T)


def random_frame_vectors(rng, n, m):
    return random_complex(rng, m, n)


@pytest.fixture
def rng():
    return np.random.default_rng(20241018)


# -- acceptance summary ----------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[marker.args[0]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0][2:])):
        status = "PASS" if _ACCEPTANCE[label] == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}")
