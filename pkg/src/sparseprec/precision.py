"""Sparse precision estimation under a known conditional-independence graph.

Each column of the precision is estimated from the covariance of the variables
in that vertex's neighbourhood (Le & Zhong, 2022): with ``B`` the block
covariance and ``e`` the indicator of the vertex inside the block, the nonzero
entries of the column are ``B^{-1} e``. Optionally every block covariance is
stabilised with diagonal-target shrinkage, and the column-wise estimate is
symmetrised as ``(L + L') / 2``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import LinAlgError, LinAlgWarning, solve

from . import moments
from .errors import (DegenerateConditionalError, InsufficientSamplesError,
                     InvalidArgumentError, SingularBlockError)
from .graph import NeighborSet, SparsityPattern, expand_order, neighbor_set


@dataclass(frozen=True)
class PrecisionEstimateOptions:
    markov_order: int = 1
    shrinkage: bool = True
    symmetrize: bool = True

    def __post_init__(self):
        if self.markov_order < 0:
            raise InvalidArgumentError("markov_order must be nonnegative")


def solve_block(block: np.ndarray, position: int, column: int | None = None) -> np.ndarray:
    """Solve ``block @ w = e_position``.

    Cholesky first, LU with partial pivoting as fallback. A block whose
    reciprocal condition number drops below machine precision counts as
    singular; ``column`` only labels the error.
    """
    rhs = np.zeros(block.shape[0])
    rhs[position] = 1.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", LinAlgWarning)
        for assume_a in ("pos", "gen"):
            try:
                return solve(block, rhs, assume_a=assume_a, check_finite=False)
            except (LinAlgError, LinAlgWarning, ValueError):
                continue
    raise SingularBlockError(column)


def block_covariance(x: np.ndarray, members, shrinkage: bool = True) -> np.ndarray:
    """Sample covariance of the columns ``members``, optionally shrunk."""
    sub = x[:, list(members)]
    if shrinkage:
        return moments.cov_shrink_spd(sub).covariance
    return moments.sample_covariance(sub)


def precision_column(x, ne: NeighborSet, shrinkage: bool = True) -> np.ndarray:
    """Estimated entries of precision column ``ne.vertex`` on ``ne.members``."""
    x = moments.as_dataset(x)
    block = block_covariance(x, ne.members, shrinkage)
    return solve_block(block, ne.position, ne.vertex)


def _check_samples(n, shrinkage):
    need = moments.MIN_SHRINKAGE_SAMPLES if shrinkage else 2
    if n < need:
        raise InsufficientSamplesError(f"need n >= {need} observations, got n={n}")


def _assemble(p, columns):
    rows, cols, vals = [], [], []
    for j, (members, w) in enumerate(columns):
        rows.append(np.asarray(members))
        cols.append(np.full(len(members), j))
        vals.append(w)
    rows, cols, vals = (np.concatenate(a) for a in (rows, cols, vals))
    return sp.csc_matrix((vals, (rows, cols)), shape=(p, p))


def prec_sparse(x, g: SparsityPattern, markov_order: int = 1, shrinkage: bool = True,
                symmetrize: bool = True, *, options: PrecisionEstimateOptions | None = None):
    """Graph-constrained precision estimate.

    Parameters
    ----------
    x : array_like, shape (n, p)
        Observations in rows.
    g : SparsityPattern
        First-order neighbourhood graph over the ``p`` columns.
    markov_order : int
        Neighbourhoods are taken from the ``markov_order``-th power of ``g``.
    shrinkage : bool
        Shrink each block covariance towards its diagonal before inversion.
    symmetrize : bool
        Return ``(L + L') / 2`` instead of the raw column-wise estimate ``L``.
    options : PrecisionEstimateOptions, optional
        Overrides the three keyword arguments above.

    Returns
    -------
    scipy.sparse.csc_matrix
        Estimate stored on exactly the expanded pattern (explicit zeros kept).
        Positive definiteness is not guaranteed; check it with
        :func:`sparseprec.factor.is_positive_definite`.
    """
    if options is not None:
        markov_order, shrinkage, symmetrize = (
            options.markov_order, options.shrinkage, options.symmetrize)
    x = moments.as_dataset(x)
    n, p = x.shape
    if g.p != p:
        raise InvalidArgumentError(f"graph has {g.p} vertices but data has {p} columns")
    _check_samples(n, shrinkage)
    expanded = expand_order(g, markov_order)

    columns = []
    for j in range(p):
        ne = neighbor_set(expanded, j)
        block = block_covariance(x, ne.members, shrinkage)
        columns.append((np.asarray(ne.members), solve_block(block, ne.position, j)))
    raw = _assemble(p, columns)
    return _symmetrize_sparse(raw) if symmetrize else raw


def prec_from_covariance(sigma, g: SparsityPattern, markov_order: int = 1,
                         symmetrize: bool = True):
    """Column-wise estimator fed with blocks of a given covariance matrix.

    With a population covariance this returns the population precision
    whenever the precision's support lies inside the expanded pattern.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (g.p, g.p):
        raise InvalidArgumentError(f"covariance shape {sigma.shape} does not match p={g.p}")
    expanded = expand_order(g, markov_order)
    columns = []
    for j in range(g.p):
        ne = neighbor_set(expanded, j)
        idx = np.asarray(ne.members)
        columns.append((idx, solve_block(sigma[np.ix_(idx, idx)], ne.position, j)))
    raw = _assemble(g.p, columns)
    return _symmetrize_sparse(raw) if symmetrize else raw


def _symmetrize_sparse(m) -> sp.csc_matrix:
    coo = sp.coo_matrix(m)
    rows = np.concatenate([coo.row, coo.col])
    cols = np.concatenate([coo.col, coo.row])
    vals = 0.5 * np.concatenate([coo.data, coo.data])
    # duplicates are summed pairwise, so (i, j) and (j, i) get the same float
    return sp.csc_matrix((vals, (rows, cols)), shape=m.shape)


def symmetrize(m) -> sp.csc_matrix:
    """``(m + m') / 2`` stored on the union of the supports of ``m`` and ``m'``."""
    if sp.issparse(m):
        shape = m.shape
    else:
        m = np.asarray(m, dtype=float)
        shape = m.shape
        if m.ndim != 2:
            raise InvalidArgumentError("symmetrize expects a matrix")
    if shape[0] != shape[1]:
        raise InvalidArgumentError(f"symmetrize expects a square matrix, got {shape}")
    return _symmetrize_sparse(m)


def conditional_expectation(prec, xrow, i: int) -> float:
    """E[x_i | x_ne(i)] for a zero-mean Gaussian with precision ``prec``."""
    prec = sp.csr_matrix(prec)
    xrow = np.asarray(xrow, dtype=float)
    if not 0 <= i < prec.shape[0]:
        raise InvalidArgumentError(f"vertex {i} out of range")
    lo, hi = prec.indptr[i], prec.indptr[i + 1]
    cols, vals = prec.indices[lo:hi], prec.data[lo:hi]
    off = cols != i
    diag = vals[~off].sum()
    if diag == 0.0:
        raise DegenerateConditionalError(f"zero diagonal precision at vertex {i}")
    return float(-np.dot(vals[off], xrow[cols[off]]) / diag)
