"""Sample moments, unbiased trace statistics and Stein-type covariance shrinkage.

The shrinkage estimators follow the nonparametric framework of Touloumis (2015):
the optimal intensity is written in terms of tr(Sigma), tr(Sigma^2) and, for the
diagonal target, sum_i sigma_ii^2, each replaced by a location-invariant unbiased
U-statistic. Throughout, ``N = n - 1`` is the degrees of freedom of the sample
covariance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import InsufficientSamplesError, InvalidArgumentError

TargetKind = Literal["identity", "diagonal"]

MIN_SHRINKAGE_SAMPLES = 4


def as_dataset(x) -> np.ndarray:
    """Validate an ``n x p`` observation matrix and return it as float64."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise InvalidArgumentError(f"dataset must be 2-dimensional, got ndim={x.ndim}")
    if x.shape[0] == 0 or x.shape[1] == 0:
        raise InvalidArgumentError(f"empty dataset of shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError("dataset contains non-finite values")
    return x


def _symmetric(a: np.ndarray) -> np.ndarray:
    # mirror the upper triangle so that a[i, j] == a[j, i] bit for bit
    return np.triu(a) + np.triu(a, 1).T


def sample_mean(x) -> np.ndarray:
    return as_dataset(x).mean(axis=0)


def sample_covariance(x) -> np.ndarray:
    """Unbiased sample covariance (divisor ``n - 1``), exactly symmetric."""
    x = as_dataset(x)
    n = x.shape[0]
    if n < 2:
        raise InsufficientSamplesError(f"sample covariance needs n >= 2, got n={n}")
    xc = x - x.mean(axis=0)
    return _symmetric(xc.T @ xc / (n - 1))


@dataclass(frozen=True)
class TraceStatistics:
    """Unbiased estimates of tr(Sigma), tr(Sigma^2) and sum_i sigma_ii^2."""

    y1: float
    y2: float
    y3: float


def _distinct_index_terms(sq_norms, frob2):
    """U-statistic sums over distinct indices for centred data.

    ``sq_norms`` holds |x_i|^2 and ``frob2`` is |X'X|_F^2. Returns the sums of
    (x_i'x_j)^2, (x_i'x_j)(x_j'x_k) and (x_i'x_j)(x_k'x_l) over pairwise
    distinct indices; centring makes the row sums of the Gram matrix vanish,
    which is what collapses the inclusion-exclusion to these closed forms.
    """
    q2 = np.sum(sq_norms * sq_norms)
    t1 = np.sum(sq_norms)
    pairs = frob2 - q2
    paths = 2.0 * q2 - frob2
    quads = t1 * t1 - 4.0 * paths - 2.0 * pairs
    return pairs, paths, quads


def _combine(pairs, paths, quads, n):
    p2 = n * (n - 1.0)
    p3 = p2 * (n - 2.0)
    p4 = p3 * (n - 3.0)
    return pairs / p2 - 2.0 * paths / p3 + quads / p4


def trace_statistics(x) -> TraceStatistics:
    """Location-invariant unbiased trace statistics of the population covariance.

    ``y1 = U1 - U4``, ``y2 = U2 - 2 U5 + U6`` and ``y3`` is the same
    construction applied column by column. The estimators are invariant under
    translation of the rows, so they are evaluated on centred data where the
    fourth-order sums have closed forms. Cost is ``O(n p min(n, p))``.
    """
    x = as_dataset(x)
    n, p = x.shape
    if n < MIN_SHRINKAGE_SAMPLES:
        raise InsufficientSamplesError(f"trace statistics need n >= 4, got n={n}")
    xc = x - x.mean(axis=0)
    sq = xc * xc
    row_norms = sq.sum(axis=1)
    gram = xc.T @ xc if p <= n else xc @ xc.T
    y1 = row_norms.sum() / (n - 1.0)
    y2 = _combine(*_distinct_index_terms(row_norms, np.sum(gram * gram)), n)

    # per column: |x_i|^2 -> x_ic^2 and |X'X|_F^2 -> (sum_i x_ic^2)^2
    col_sq = sq.sum(axis=0)
    s4 = np.sum(sq * sq, axis=0)
    s22 = col_sq * col_sq
    pairs = np.sum(s22 - s4)
    paths = np.sum(2.0 * s4 - s22)
    quads = np.sum(3.0 * s22 - 6.0 * s4)
    y3 = _combine(pairs, paths, quads, n)
    return TraceStatistics(float(y1), float(y2), float(y3))


def _intensity(y1, y2, y3, dof, p, target_kind):
    if target_kind == "identity":
        num = y2 + y1 * y1
        den = dof * y2 + (p - dof + 1.0) / p * y1 * y1
    elif target_kind == "diagonal":
        num = y2 + y1 * y1 - 2.0 * y3
        den = dof * y2 + y1 * y1 - (dof + 1.0) * y3
    else:
        raise InvalidArgumentError(f"unknown target kind {target_kind!r}")
    return num, den


def shrinkage_intensity(stats: TraceStatistics, n: int, p: int,
                        target_kind: TargetKind = "diagonal") -> float:
    """Estimated optimal shrinkage weight on the target, clipped to [0, 1].

    A non-positive or non-finite denominator means the statistics carry no
    usable signal and full shrinkage (1.0) is returned.
    """
    if n < MIN_SHRINKAGE_SAMPLES:
        raise InsufficientSamplesError(f"shrinkage needs n >= 4, got n={n}")
    if p < 1:
        raise InvalidArgumentError("p must be positive")
    num, den = _intensity(stats.y1, stats.y2, stats.y3, n - 1.0, float(p), target_kind)
    if not (np.isfinite(den) and den > 0.0 and np.isfinite(num)):
        return 1.0
    return float(min(max(num / den, 0.0), 1.0))


@dataclass(frozen=True)
class ShrinkageEstimate:
    lam: float
    covariance: np.ndarray
    target_kind: TargetKind
    nu: Optional[float] = None


def cov_shrink_spd(x) -> ShrinkageEstimate:
    """Shrink the sample covariance towards its own diagonal.

    The diagonal of the result equals the sample variances exactly and the
    off-diagonal entries are scaled by ``1 - lam``.
    """
    x = as_dataset(x)
    n, p = x.shape
    stats = trace_statistics(x)
    lam = shrinkage_intensity(stats, n, p, "diagonal")
    s = sample_covariance(x)
    out = (1.0 - lam) * s
    np.fill_diagonal(out, np.diag(s))
    return ShrinkageEstimate(lam, out, "diagonal")


def cov_shrink_identity(x) -> ShrinkageEstimate:
    """Shrink the sample covariance towards ``nu * I`` with ``nu = y1 / p``."""
    x = as_dataset(x)
    n, p = x.shape
    stats = trace_statistics(x)
    lam = shrinkage_intensity(stats, n, p, "identity")
    nu = stats.y1 / p
    out = (1.0 - lam) * sample_covariance(x)
    out[np.diag_indices(p)] += lam * nu
    return ShrinkageEstimate(lam, out, "identity", nu=float(nu))
