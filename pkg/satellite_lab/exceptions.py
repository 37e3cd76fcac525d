"""
Module dedicated to error handling.

Two families of errors are distinguished so that callers (and the command line exit codes)
can tell a violated precondition from a numerical method that failed to converge.
"""
from __future__ import annotations

from typing import Optional


class SatelliteLabError(Exception):
    """
    Exception raised by functions of satellite_lab.
    """


class NumericalError(SatelliteLabError):
    """A numerical method (Newton, quadrature, continuation, search) failed."""


class DomainError(SatelliteLabError):
    """An input lies outside the domain where the requested quantity is defined."""


class ValidationFailure(SatelliteLabError):
    """A computed quantity violates a bound asserted by the theory."""


class Escaped(NumericalError):
    """The orbit left the escape disk."""

    def __init__(self, step: int, value: Optional[complex] = None):
        self.step = step
        self.value = value
        super().__init__(f"Orbit left the escape disk at step {step} (z = {value})")


class Overflow(NumericalError):
    """A magnitude exceeded the representable floating point range."""


class NoConvergence(NumericalError):
    """Newton iteration failed to converge."""


class WrongPeriod(NumericalError):
    """Newton converged to an orbit whose exact period is a proper divisor."""

    def __init__(self, period: int, requested: int):
        self.period = period
        self.requested = requested
        super().__init__(
            f"Converged to an orbit of period {period}, a proper divisor of {requested}"
        )


class NoQuadratureConvergence(NumericalError):
    """The trapezoid rule did not converge within the maximal node count."""


class FixedPointOnContour(NumericalError):
    """A fixed point lies on (or too close to) the integration contour."""


class RoundingAmbiguous(NumericalError):
    """A multiplicity integral is not close to an integer."""


class LogBranchViolation(NumericalError):
    """The derivative of the iterate leaves the disk D(1, 1) on the contour."""


class NotMinimal(NumericalError):
    """A Misiurewicz candidate reaches 0 with a smaller pre-period."""

    def __init__(self, m: int):
        self.m = m
        super().__init__(f"The critical value reaches 0 already after {m} return(s)")


class ContinuationFailure(NumericalError):
    """A cycle could not be tracked along a continuation path."""


class SingularJacobian(NumericalError):
    """The Jacobian of a Newton system is numerically singular."""


class SearchExhausted(NumericalError):
    """No candidate passed validation within the configured search depth."""


class IllConditionedFit(NumericalError):
    """A least squares fit is under-determined or ill-conditioned."""


class RootNotMember(NumericalError):
    """The pixel holding a sublimb root is not a member of the connectedness locus."""


class LimbUnresolved(NumericalError):
    """The scanned sublimb covers a single pixel of the window."""


class OutOfDomain(DomainError):
    """An argument lies outside the right half-plane or a similar domain."""


class BranchCut(DomainError):
    """The principal logarithm is requested on the negative real axis."""


class PoleHit(DomainError):
    """A Moebius map is evaluated at its pole."""


class NotCoprime(DomainError):
    """Integers expected to be coprime are not."""


class DegenerateParallelogram(DomainError):
    """The spanning vectors of a parallelogram are linearly dependent."""


class PrecisionLimit(DomainError):
    """The requested denominator exceeds what double precision supports."""
