"""Exception types raised by the estimators and the command line."""

import numpy as np


class InvalidArgumentError(ValueError):
    """Bad shapes, indices or option values."""


class InsufficientSamplesError(ValueError):
    """Too few observation rows for the requested statistic."""


class SingularBlockError(np.linalg.LinAlgError):
    """A block-sample covariance could not be inverted."""

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"singular block covariance for column {column}")


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """Matrix does not admit a symmetric positive definite factorization."""


class NonStationaryError(ValueError):
    """Autoregressive coefficients outside the stationary region."""


class DegenerateConditionalError(ZeroDivisionError):
    """Zero diagonal precision entry in a conditional expectation."""
