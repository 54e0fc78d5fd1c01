"""Autoregressive simulators, population covariance/precision and error metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import InvalidArgumentError, NonStationaryError

STATIONARITY_MARGIN = 1e-10


@dataclass(frozen=True)
class ArProcessSpec:
    """``x_t = sum_j coefficients[j-1] x_{t-j} + noise_sd * eps_t``."""

    coefficients: tuple[float, ...] = ()
    horizon: int = 1
    noise_sd: float = 1.0
    stationary_init: bool = True

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        if self.noise_sd <= 0:
            raise InvalidArgumentError("noise_sd must be positive")
        if self.horizon < 1:
            raise InvalidArgumentError("horizon must be at least 1")

    @property
    def order(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class MixedEffectArSpec:
    """Random-effect AR(p): ``x_{i,t} = u_t sum_j psi_j x_{i,t-j} + eps_{i,t}``.

    ``u_t ~ U(0, 1)`` is drawn once per time step and shared by all
    realisations. ``u_seed`` overrides the seed of the ``u`` stream only.
    """

    coefficients: tuple[float, ...]
    horizon: int
    realisations: int
    seed: int = 0
    u_seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        if self.coefficients and abs(sum(self.coefficients) - 1.0) > 1e-12:
            raise InvalidArgumentError("mixed-effect coefficients must sum to 1")
        if self.horizon < 1 or self.realisations < 1:
            raise InvalidArgumentError("horizon and realisations must be positive")

    @property
    def order(self) -> int:
        return len(self.coefficients)


def companion_spectral_radius(coefficients) -> float:
    psi = np.asarray(coefficients, dtype=float)
    p = psi.size
    if p == 0:
        return 0.0
    comp = np.zeros((p, p))
    comp[0] = psi
    comp[1:, :-1] = np.eye(p - 1)
    return float(np.max(np.abs(np.linalg.eigvals(comp))))


def is_stationary(coefficients) -> bool:
    return companion_spectral_radius(coefficients) < 1.0 - STATIONARITY_MARGIN


def _require_stationary(coefficients):
    if not is_stationary(coefficients):
        raise NonStationaryError(
            f"coefficients {tuple(coefficients)} are not stationary "
            f"(spectral radius {companion_spectral_radius(coefficients):.6g})")


def autocovariance(spec: ArProcessSpec, max_lag: int) -> np.ndarray:
    """Autocovariances ``gamma_0 .. gamma_max_lag`` from the Yule-Walker equations.

    The ``p + 1`` equations ``gamma_k - sum_j psi_j gamma_|k-j| = sigma^2 [k == 0]``
    are solved for ``gamma_0 .. gamma_p``; later lags follow the recursion.
    """
    psi = np.asarray(spec.coefficients)
    p = psi.size
    _require_stationary(psi)
    var = spec.noise_sd ** 2
    a = np.eye(p + 1)
    for k in range(p + 1):
        for j in range(1, p + 1):
            a[k, abs(k - j)] -= psi[j - 1]
    rhs = np.zeros(p + 1)
    rhs[0] = var
    gamma0 = np.linalg.solve(a, rhs)
    gamma = np.zeros(max(max_lag, p) + 1)
    gamma[: p + 1] = gamma0
    for k in range(p + 1, gamma.size):
        gamma[k] = psi @ gamma[k - p : k][::-1]
    return gamma[: max_lag + 1]


def _toeplitz(gamma, horizon):
    idx = np.arange(horizon)
    return gamma[np.abs(idx[:, None] - idx[None, :])]


def population_covariance_arp(spec: ArProcessSpec, horizon: int | None = None) -> np.ndarray:
    horizon = spec.horizon if horizon is None else horizon
    return _toeplitz(autocovariance(spec, horizon - 1), horizon)


def population_precision_arp(spec: ArProcessSpec, horizon: int | None = None) -> np.ndarray:
    cov = population_covariance_arp(spec, horizon)
    prec = np.linalg.inv(cov)
    return np.triu(prec) + np.triu(prec, 1).T


def _check_phi(phi):
    if not abs(phi) < 1.0:
        raise NonStationaryError(f"|phi| must be below 1, got {phi}")


def population_covariance_ar1(phi: float, horizon: int) -> np.ndarray:
    _check_phi(phi)
    if horizon < 1:
        raise InvalidArgumentError("horizon must be at least 1")
    lag = np.abs(np.subtract.outer(np.arange(horizon), np.arange(horizon)))
    return phi ** lag / (1.0 - phi * phi)


def population_precision_ar1(phi: float, horizon: int) -> sp.csc_matrix:
    """Tridiagonal AR(1) precision: corners 1, interior ``1 + phi^2``, off-diagonal ``-phi``."""
    _check_phi(phi)
    if horizon < 2:
        raise InvalidArgumentError("horizon must be at least 2")
    diag = np.full(horizon, 1.0 + phi * phi)
    diag[0] = diag[-1] = 1.0
    off = np.full(horizon - 1, -phi)
    return sp.diags([off, diag, off], [-1, 0, 1], format="csc")


def _streams(seed, count):
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return [np.random.default_rng(s) for s in seed.spawn(count)]


def simulate_ar(spec: ArProcessSpec, n: int, seed=None) -> np.ndarray:
    """Draw ``n`` independent length-``horizon`` paths, one per row.

    With ``stationary_init`` the first ``order`` values come from the stationary
    joint distribution, otherwise the pre-sample is zero. The initial values
    and the innovations use separate sub-streams of ``seed``.
    """
    psi = np.asarray(spec.coefficients)
    p, horizon = psi.size, spec.horizon
    init_rng, eps_rng = _streams(seed, 2)
    eps = spec.noise_sd * eps_rng.standard_normal((n, horizon))
    x = np.zeros((n, horizon))
    start = 0
    if spec.stationary_init and p > 0:
        _require_stationary(psi)
        start = min(p, horizon)
        cov = population_covariance_arp(spec, start)
        x[:, :start] = init_rng.standard_normal((n, start)) @ np.linalg.cholesky(cov).T
    for t in range(start, horizon):
        k = min(p, t)
        x[:, t] = eps[:, t]
        if k:
            x[:, t] += x[:, t - k : t][:, ::-1] @ psi[:k]
    return x


def simulate_mixed_effect_ar(spec: MixedEffectArSpec) -> np.ndarray:
    """Simulate the random-effect AR(p) model with zero pre-sample values."""
    psi = np.asarray(spec.coefficients)
    p, horizon = psi.size, spec.horizon
    eps_ss, u_ss = np.random.SeedSequence(spec.seed).spawn(2)
    if spec.u_seed is not None:
        u_ss = np.random.SeedSequence(spec.u_seed)
    eps = np.random.default_rng(eps_ss).standard_normal((spec.realisations, horizon))
    u = np.random.default_rng(u_ss).uniform(0.0, 1.0, horizon)
    x = np.zeros((spec.realisations, horizon))
    for t in range(horizon):
        k = min(p, t)
        x[:, t] = eps[:, t]
        if k:
            x[:, t] += u[t] * (x[:, t - k : t][:, ::-1] @ psi[:k])
    return x


def frobenius_error(a, b) -> float:
    a = a.toarray() if sp.issparse(a) else np.asarray(a, dtype=float)
    b = b.toarray() if sp.issparse(b) else np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise InvalidArgumentError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def pseudo_inverse(m, rank_tol: float | None = None) -> np.ndarray:
    """Moore-Penrose inverse of a symmetric matrix by spectral truncation.

    Eigenvalues with magnitude at most ``rank_tol * max|eigenvalue|`` are
    dropped; the default tolerance is ``p * eps``.
    """
    m = np.asarray(m, dtype=float)
    p = m.shape[0]
    if rank_tol is None:
        rank_tol = p * np.finfo(float).eps
    vals, vecs = np.linalg.eigh(m)
    top = np.max(np.abs(vals)) if p else 0.0
    keep = np.abs(vals) > rank_tol * top
    if not np.any(keep):
        return np.zeros_like(m)
    v = vecs[:, keep]
    out = (v / vals[keep]) @ v.T
    return np.triu(out) + np.triu(out, 1).T
