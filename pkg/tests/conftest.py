import numpy as np
import pytest


def ar1_cov(phi, horizon):
    lag = np.abs(np.subtract.outer(np.arange(horizon), np.arange(horizon)))
    return phi ** lag / (1 - phi ** 2)


def gaussian_rows(cov, n, seed):
    """Rows drawn from N(0, cov) through a Cholesky factor, independent of the simulators."""
    chol = np.linalg.cholesky(cov)
    return np.random.default_rng(seed).standard_normal((n, cov.shape[0])) @ chol.T


def unit_covariance_data(n, p, seed=0):
    """Data whose sample covariance is exactly the identity (up to rounding)."""
    z = np.random.default_rng(seed).standard_normal((n, p))
    z -= z.mean(axis=0)
    q, _ = np.linalg.qr(z)
    return np.sqrt(n - 1) * q


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][1:])):
            terminalreporter.write_line(line)
