import numpy as np
import pytest

from qcorrel import make_classical_mixture

_ACCEPTANCE_LINES = []


def random_unitary(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (x + x.conj().T) / 2


def random_mixture(rng, max_dim=4):
    """Random diagonal classical mixture with 1..dA*dB distinct terms."""
    da, db = (int(x) for x in rng.integers(1, max_dim + 1, size=2))
    k = int(rng.integers(1, da * db + 1))
    cells = rng.choice(da * db, size=k, replace=False)
    w = rng.random(k) + 0.05
    w /= w.sum()
    terms = [(float(wi), int(c) // db, int(c) % db) for wi, c in zip(w, cells)]
    return make_classical_mixture(da, db, terms)


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
