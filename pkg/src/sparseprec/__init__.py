"""Shrinkage covariance and graph-constrained sparse precision estimation."""

from .arp_oracle import (ArProcessSpec, MixedEffectArSpec, frobenius_error,
                         population_covariance_ar1, population_covariance_arp,
                         population_precision_ar1, population_precision_arp,
                         pseudo_inverse, simulate_ar, simulate_mixed_effect_ar)
from .errors import (DegenerateConditionalError, InsufficientSamplesError,
                     InvalidArgumentError, NonStationaryError, NotPositiveDefiniteError,
                     SingularBlockError)
from .factor import is_positive_definite, logdet_spd
from .graph import (NeighborSet, SparsityPattern, band_pattern, dense_pattern,
                    expand_order, identity_pattern, neighbor_set)
from .moments import (ShrinkageEstimate, TraceStatistics, cov_shrink_identity,
                      cov_shrink_spd, sample_covariance, sample_mean,
                      shrinkage_intensity, trace_statistics)
from .precision import (PrecisionEstimateOptions, conditional_expectation,
                        prec_from_covariance, prec_sparse, precision_column, symmetrize)
from .selection import OrderSelectionTrace, prec_aic, prec_nll, select_markov_order

__version__ = "0.1.0"
