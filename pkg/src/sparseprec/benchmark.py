"""Monte-Carlo Frobenius-error benchmarks on AR(p) processes.

Each (sweep value, repetition) pair draws its own AR dataset from a
sub-stream of the master seed, so any subset of the sweep can be rerun and
reproduces the same rows.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import moments
from .arp_oracle import (ArProcessSpec, frobenius_error, population_covariance_arp,
                         population_precision_arp, pseudo_inverse, simulate_ar)
from .errors import InvalidArgumentError
from .graph import band_pattern
from .precision import prec_sparse

log = logging.getLogger(__name__)

ESTIMATORS = ("gspme", "le", "sample", "shrinkage")
EXPERIMENTS = ("dimension", "samplesize", "arorder")

SWEEPS = {
    "desk": {
        "dimension": (10, 25, 50, 75, 100),
        "samplesize": (30, 100, 300, 1000),
        "arorder": (0, 1, 2, 4, 8, 16, 39),
    },
    "full": {
        "dimension": tuple(range(10, 301, 10)),
        "samplesize": (30, 50, 75, 100, 150, 200, 300, 500, 1000, 2000, 5000, 10000),
        "arorder": tuple(range(0, 40)),
    },
}

PHI = 0.8


@dataclass(frozen=True)
class BenchmarkRecord:
    experiment: str
    estimator: str
    sweep_value: int
    rep: int
    frob_cov: float
    frob_prec: float
    failed: bool = False

    FIELDS = ("experiment", "estimator", "sweep_value", "rep", "frob_cov", "frob_prec", "status")

    def row(self):
        return (self.experiment, self.estimator, self.sweep_value, self.rep,
                repr(self.frob_cov), repr(self.frob_prec),
                "failed" if self.failed else "ok")


def setting(experiment: str, value: int):
    """``(ArProcessSpec, n)`` for one sweep value."""
    if experiment == "dimension":
        return ArProcessSpec((PHI,), horizon=value), 100
    if experiment == "samplesize":
        return ArProcessSpec((PHI,), horizon=100), value
    if experiment == "arorder":
        coeffs = (PHI / value,) * value if value else ()
        return ArProcessSpec(coeffs, horizon=40), 100
    raise InvalidArgumentError(f"unknown experiment {experiment!r}")


def _inverse(m):
    try:
        return np.linalg.inv(m)
    except np.linalg.LinAlgError:
        return None


def _graph_estimate(x, order, shrinkage, symmetrize, cov, prec):
    est = prec_sparse(x, band_pattern(x.shape[1], 1), markov_order=order,
                      shrinkage=shrinkage, symmetrize=symmetrize).toarray()
    inv = _inverse(est)
    frob_cov = frobenius_error(inv, cov) if inv is not None else float("nan")
    return frob_cov, frobenius_error(est, prec)


def _covariance_estimate(s, cov, prec):
    return frobenius_error(s, cov), frobenius_error(pseudo_inverse(s), prec)


def evaluate_rep(experiment: str, value: int, rep: int, seed: int,
                 cov=None, prec=None) -> list[BenchmarkRecord]:
    """Simulate one dataset and score all four estimators on it."""
    spec, n = setting(experiment, value)
    if cov is None:
        cov = population_covariance_arp(spec)
        prec = population_precision_arp(spec)
    x = simulate_ar(spec, n, seed=np.random.SeedSequence(seed, spawn_key=(value, rep)))
    order = spec.order if experiment == "arorder" else 1
    runs = {
        "gspme": lambda: _graph_estimate(x, order, True, True, cov, prec),
        "le": lambda: _graph_estimate(x, order, False, False, cov, prec),
        "shrinkage": lambda: _covariance_estimate(moments.cov_shrink_spd(x).covariance, cov, prec),
        "sample": lambda: _covariance_estimate(moments.sample_covariance(x), cov, prec),
    }
    out = []
    for name in ESTIMATORS:
        try:
            fc, fp = runs[name]()
            failed = not (np.isfinite(fc) and np.isfinite(fp))
        except (np.linalg.LinAlgError, ValueError) as exc:
            log.warning("%s at %s=%d rep %d failed: %s", name, experiment, value, rep, exc)
            fc, fp, failed = float("nan"), float("nan"), True
        out.append(BenchmarkRecord(experiment, name, value, rep, fc, fp, failed))
    return out


def run_benchmark(experiment: str, reps: int, seed: int = 0, scale: str = "desk",
                  values=None) -> list[BenchmarkRecord]:
    """All records of one sweep, sorted by (sweep_value, rep, estimator)."""
    if experiment not in EXPERIMENTS:
        raise InvalidArgumentError(f"unknown experiment {experiment!r}")
    if scale not in SWEEPS:
        raise InvalidArgumentError(f"unknown scale {scale!r}")
    if reps < 1:
        raise InvalidArgumentError("reps must be positive")
    values = SWEEPS[scale][experiment] if values is None else tuple(values)
    records = []
    for value in values:
        spec, _ = setting(experiment, value)
        cov = population_covariance_arp(spec)
        prec = population_precision_arp(spec)
        for rep in range(reps):
            records.extend(evaluate_rep(experiment, value, rep, seed, cov, prec))
    records.sort(key=lambda r: (r.sweep_value, r.rep, r.estimator))
    return records


def mean_errors(records, metric: str = "frob_prec") -> dict:
    """``{(sweep_value, estimator): mean}`` over the successful repetitions."""
    acc = {}
    for r in records:
        if not r.failed:
            acc.setdefault((r.sweep_value, r.estimator), []).append(getattr(r, metric))
    return {k: float(np.mean(v)) for k, v in acc.items()}
