"""Gaussian quasi-likelihood, AIC penalty and Markov-order search."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import scipy.sparse as sp

from . import moments
from .errors import InvalidArgumentError, NotPositiveDefiniteError
from .factor import logdet_spd
from .graph import SparsityPattern
from .precision import prec_sparse

log = logging.getLogger(__name__)

StopRule = Literal["exhaustive", "first-rise"]


def _trace_product(s: np.ndarray, prec) -> float:
    # tr(S L) for symmetric S and L, summed over the stored entries of L only
    coo = sp.coo_matrix(prec)
    return float(np.sum(coo.data * s[coo.row, coo.col]))


def prec_nll(x, prec) -> float:
    """Average Gaussian negative log-likelihood ``(tr(S L) - log det L) / 2``.

    ``S`` is the sample covariance of ``x`` (divisor ``n - 1``). Raises
    :class:`NotPositiveDefiniteError` when ``prec`` has no Cholesky factor.
    """
    s = moments.sample_covariance(x)
    if prec.shape != s.shape:
        raise InvalidArgumentError(f"precision shape {prec.shape} does not match p={s.shape[0]}")
    return 0.5 * (_trace_product(s, prec) - logdet_spd(prec))


def aic_penalty(prec, n: int) -> float:
    """``(nnz + p) / (2 n)``: half the count of free parameters per observation."""
    return (sp.csr_matrix(prec).nnz + prec.shape[0]) / (2.0 * n)


def prec_aic(x, prec) -> float:
    x = moments.as_dataset(x)
    return prec_nll(x, prec) + aic_penalty(prec, x.shape[0])


@dataclass
class OrderSelectionTrace:
    """Evaluated orders with their likelihood and AIC values.

    Orders whose estimate could not be factorized are listed in ``failed`` and
    left out of the three aligned lists.
    """

    orders: list[int] = field(default_factory=list)
    nll: list[float] = field(default_factory=list)
    aic: list[float] = field(default_factory=list)
    selected: int | None = None
    failed: list[int] = field(default_factory=list)

    def penalty(self) -> list[float]:
        return [a - b for a, b in zip(self.aic, self.nll)]


def select_markov_order(x, g: SparsityPattern, max_order: int,
                        stop_rule: StopRule = "exhaustive") -> OrderSelectionTrace:
    """Pick the Markov order minimising the penalized quasi-likelihood.

    Orders ``0..max_order`` are fitted with shrinkage and symmetrization. The
    exhaustive rule evaluates them all and returns the smallest minimiser;
    ``first-rise`` stops at the first order whose AIC exceeds that of the
    previous successful order and selects the latter.
    """
    if max_order < 0:
        raise InvalidArgumentError("max_order must be nonnegative")
    if stop_rule not in ("exhaustive", "first-rise"):
        raise InvalidArgumentError(f"unknown stop rule {stop_rule!r}")
    x = moments.as_dataset(x)
    n = x.shape[0]
    trace = OrderSelectionTrace()
    for k in range(max_order + 1):
        prec = prec_sparse(x, g, markov_order=k)
        try:
            nll = prec_nll(x, prec)
        except NotPositiveDefiniteError:
            log.info("order %d: estimate is not positive definite, skipped", k)
            trace.failed.append(k)
            continue
        aic = nll + aic_penalty(prec, n)
        if stop_rule == "first-rise" and trace.aic and aic > trace.aic[-1]:
            trace.orders.append(k)
            trace.nll.append(nll)
            trace.aic.append(aic)
            trace.selected = trace.orders[-2]
            return trace
        trace.orders.append(k)
        trace.nll.append(nll)
        trace.aic.append(aic)
    if not trace.orders:
        raise NotPositiveDefiniteError("no order produced a positive definite estimate")
    trace.selected = trace.orders[int(np.argmin(trace.aic))]
    return trace

