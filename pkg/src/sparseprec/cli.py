"""Command line front end.

Exit codes: 0 success, 2 bad arguments or dimension mismatch, 3 non-stationary
coefficients, 4 too few samples, 5 singular block or no usable estimate.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys

import numpy as np

from . import benchmark, io
from .arp_oracle import ArProcessSpec, MixedEffectArSpec, simulate_ar, simulate_mixed_effect_ar
from .errors import (InsufficientSamplesError, InvalidArgumentError, NonStationaryError,
                     NotPositiveDefiniteError, SingularBlockError)
from .moments import cov_shrink_identity, cov_shrink_spd
from .precision import prec_sparse
from .selection import select_markov_order

EXIT_USAGE = 2
EXIT_NONSTATIONARY = 3
EXIT_SAMPLES = 4
EXIT_SINGULAR = 5

log = logging.getLogger("sparseprec")


def _coeffs(text):
    if text is None or text == "":
        return ()
    try:
        return tuple(float(c) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad coefficient list {text!r}") from None


def cmd_simulate(args):
    coeffs = args.coeffs
    if len(coeffs) != args.order:
        raise InvalidArgumentError(f"--order {args.order} but {len(coeffs)} coefficients given")
    if args.model == "ar":
        x = simulate_ar(ArProcessSpec(coeffs, horizon=args.t), args.n, seed=args.seed)
    else:
        x = simulate_mixed_effect_ar(MixedEffectArSpec(coeffs, args.t, args.n, seed=args.seed))
    io.write_dataset(args.out, x)


def cmd_shrink(args):
    x = io.read_dataset(args.data)
    est = cov_shrink_spd(x) if args.target == "diagonal" else cov_shrink_identity(x)
    np.savetxt(args.out, est.covariance, delimiter=",", fmt="%.17g")
    print(f"lambda={est.lam!r}")
    if est.nu is not None:
        print(f"nu={est.nu!r}")


def _data_and_graph(args):
    x = io.read_dataset(args.data)
    g = io.read_graph(args.graph)
    if g.p != x.shape[1]:
        raise InvalidArgumentError(f"graph has {g.p} vertices but data has {x.shape[1]} columns")
    return x, g


def cmd_estimate(args):
    x, g = _data_and_graph(args)
    prec = prec_sparse(x, g, markov_order=args.markov_order,
                       shrinkage=not args.no_shrinkage, symmetrize=not args.no_symmetrize)
    io.write_precision(args.out, prec)


def cmd_select_order(args):
    x, g = _data_and_graph(args)
    trace = select_markov_order(x, g, args.max_order, args.rule)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(("order", "nll", "aic"))
    for k, nll, aic in zip(trace.orders, trace.nll, trace.aic):
        out.writerow((k, repr(nll), repr(aic)))
    for k in trace.failed:
        log.warning("order %d skipped: estimate not positive definite", k)
    print(f"selected={trace.selected}")


def cmd_benchmark(args):
    records = benchmark.run_benchmark(args.experiment, args.reps, args.seed, args.scale)
    with open(args.out, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(benchmark.BenchmarkRecord.FIELDS)
        out.writerows(r.row() for r in records)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparseprec", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate AR or mixed-effect AR datasets")
    p.add_argument("--model", choices=("ar", "mixed"), required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--coeffs", type=_coeffs, default=())
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("shrink", help="shrinkage covariance estimate")
    p.add_argument("--data", required=True)
    p.add_argument("--target", choices=("diagonal", "identity"), default="diagonal")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_shrink)

    p = sub.add_parser("estimate", help="sparse precision estimate for a graph")
    p.add_argument("--data", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--markov-order", type=int, default=1)
    p.add_argument("--no-shrinkage", action="store_true")
    p.add_argument("--no-symmetrize", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("select-order", help="Markov order search by AIC")
    p.add_argument("--data", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--rule", choices=("exhaustive", "first-rise"), default="exhaustive")
    p.set_defaults(func=cmd_select_order)

    p = sub.add_parser("benchmark", help="Frobenius-error Monte-Carlo sweeps")
    p.add_argument("--experiment", choices=benchmark.EXPERIMENTS, required=True)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", choices=tuple(benchmark.SWEEPS), default="desk")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        args.func(args)
    except NonStationaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONSTATIONARY
    except InsufficientSamplesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SAMPLES
    except SingularBlockError as exc:
        print(f"error: singular block covariance at column {exc.column + 1}", file=sys.stderr)
        return EXIT_SINGULAR
    except NotPositiveDefiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (InvalidArgumentError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
