"""Exception types shared across the package.

Precondition violations (bad orders, out-of-range arguments, malformed
beam descriptions) raise plain ValueError.  The classes below mark
runtime numerical failures that callers may want to catch and handle.
"""

from __future__ import annotations


class SpinBeamError(Exception):
    """Base class for numerical failures raised by this package."""


class IntegrandError(SpinBeamError):
    """Integrand returned a non-finite value inside the integration interval."""


class ConvergenceError(SpinBeamError):
    """Adaptive integration hit its depth limit before meeting tolerance.

    Carries the best available result in ``result`` (a QuadResult).
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class UndefinedPolarizationError(SpinBeamError):
    """Spin polarization requested where the probability density vanishes."""


class IllConvergedLimitError(SpinBeamError):
    """Large-radius extrapolation spread exceeded its convergence gate."""
