import numpy as np
import pytest
import scipy.sparse as sp

from sparseprec.errors import InvalidArgumentError, NotPositiveDefiniteError
from sparseprec.factor import banded_cholesky, is_positive_definite, logdet_spd


def random_spd_on_pattern(rng, p, edges):
    a = np.eye(p) * p
    for i, j in edges:
        a[i, j] = a[j, i] = rng.uniform(-1, 1)
    return sp.csc_matrix(a)


def test_logdet_matches_dense(rng):
    edges = [(0, 7), (1, 2), (2, 9), (3, 4), (5, 8), (6, 7)]
    m = random_spd_on_pattern(rng, 10, edges)
    assert logdet_spd(m) == pytest.approx(np.linalg.slogdet(m.toarray())[1], rel=1e-12)


def test_rcm_keeps_band_narrow():
    p = 50
    perm = np.random.default_rng(0).permutation(p)
    band = sp.diags([-np.ones(p - 1), 3 * np.ones(p), -np.ones(p - 1)], [-1, 0, 1]).toarray()
    shuffled = sp.csc_matrix(band[np.ix_(perm, perm)])
    factor, _ = banded_cholesky(shuffled)
    assert factor.shape[0] <= 3
    assert logdet_spd(shuffled) == pytest.approx(np.linalg.slogdet(band)[1], rel=1e-12)


def test_not_positive_definite():
    m = sp.csc_matrix(np.array([[1.0, 2.0], [2.0, 1.0]]))
    with pytest.raises(NotPositiveDefiniteError):
        logdet_spd(m)
    assert not is_positive_definite(m)
    assert is_positive_definite(sp.identity(3))


def test_asymmetric_input_rejected():
    with pytest.raises(InvalidArgumentError):
        logdet_spd(sp.csc_matrix(np.array([[2.0, 1.0], [0.0, 2.0]])))
    assert not is_positive_definite(np.array([[2.0, 1.0], [0.0, 2.0]]))
