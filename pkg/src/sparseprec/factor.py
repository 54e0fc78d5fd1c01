"""Sparse symmetric positive definite factorization and log-determinants.

The matrix is reordered with reverse Cuthill-McKee and factorized in banded
storage with LAPACK ``pbtrf``; for the band-limited precisions produced by the
estimators this is a fill-free sparse Cholesky.
"""

import numpy as np
import scipy.sparse as sp
from scipy.linalg import LinAlgError, cholesky_banded
from scipy.sparse.csgraph import reverse_cuthill_mckee

from .errors import InvalidArgumentError, NotPositiveDefiniteError


def _check_symmetric(m: sp.csr_matrix, rtol=1e-12):
    diff = abs(m - m.T)
    scale = abs(m).max() if m.nnz else 0.0
    if diff.nnz and diff.max() > rtol * max(scale, 1.0):
        raise InvalidArgumentError("matrix is not symmetric")


def banded_cholesky(m):
    """Upper banded Cholesky factor of ``m`` after RCM reordering.

    Returns ``(factor, perm)`` where ``factor`` is in LAPACK upper band storage
    for ``m[perm][:, perm]``. Raises :class:`NotPositiveDefiniteError`.
    """
    m = sp.csr_matrix(m, dtype=float)
    if m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"matrix must be square, got {m.shape}")
    _check_symmetric(m)
    if not np.all(np.isfinite(m.data)):
        raise NotPositiveDefiniteError("matrix has non-finite entries")
    perm = reverse_cuthill_mckee(m, symmetric_mode=True)
    mp = m[perm][:, perm].tocoo()
    upper = mp.row <= mp.col
    r, c, v = mp.row[upper], mp.col[upper], mp.data[upper]
    u = int((c - r).max()) if v.size else 0
    ab = np.zeros((u + 1, m.shape[0]))
    ab[u + r - c, c] = v
    try:
        factor = cholesky_banded(ab, lower=False, check_finite=False)
    except LinAlgError as exc:
        raise NotPositiveDefiniteError(str(exc)) from None
    return factor, perm


def logdet_spd(m) -> float:
    factor, _ = banded_cholesky(m)
    return float(2.0 * np.sum(np.log(factor[-1])))


def is_positive_definite(m) -> bool:
    """True when ``m`` is symmetric and admits a Cholesky factorization."""
    try:
        banded_cholesky(m)
    except (NotPositiveDefiniteError, InvalidArgumentError):
        return False
    return True
