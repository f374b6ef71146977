import numpy as np
import pytest


def real_basis(constraints, dim):
    """Orthonormal basis (rows) of the real null space of stacked constraints."""
    if not constraints:
        return np.eye(dim)
    A = np.vstack(constraints)
    _, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > 1e-9))
    return vt[rank:]


def ad_eigen_counts(mats, H, decimals=6):
    """Multiplicities of the eigenvalues of ad(H) on the real span of ``mats``."""
    flat = np.array([m.ravel() for m in mats])
    flat_r = np.hstack([flat.real, flat.imag]).T
    images = []
    for m in mats:
        c = H @ m - m @ H
        v = np.concatenate([c.ravel().real, c.ravel().imag])
        coef, *_ = np.linalg.lstsq(flat_r, v, rcond=None)
        images.append(coef)
    ad = np.array(images).T
    ev = np.round(np.linalg.eigvals(ad).real, decimals)
    vals, counts = np.unique(ev, return_counts=True)
    return {float(v): int(c) for v, c in zip(vals, counts)}


@pytest.fixture
def elementary():
    def E(n, i, j):
        m = np.zeros((n, n))
        m[i - 1, j - 1] = 1
        return m
    return E


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
