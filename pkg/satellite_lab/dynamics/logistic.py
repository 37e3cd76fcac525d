"""
Dynamics of the logistic family P_lambda(z) = lambda * z + z^2.

The fixed point 0 of P_lambda has multiplier lambda and the critical point is -lambda / 2 with
critical value -lambda^2 / 4. Derivatives with respect to z and lambda are propagated along
orbits with the chain rule; no finite differences are used so Newton basins stay sharp.
"""
from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from satellite_lab.config import DEFAULTS, Tolerances
from satellite_lab.exceptions import (
    DomainError,
    Escaped,
    NoConvergence,
    NotMinimal,
    Overflow,
    WrongPeriod,
)
from satellite_lab.utils import IrreducibleRational, proper_divisors

L = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitTrace:
    """Finite orbit z0, P(z0), ..., P^n(z0) with the derivative of P^n at z0."""

    start: complex
    lambda_: complex
    points: Tuple[complex, ...]
    derivative: complex


@dataclass(frozen=True)
class CycleRecord:
    """A cycle of exact period ``period`` of P_lambda and its multiplier."""

    lambda_: complex
    period: int
    points: Tuple[complex, ...]
    multiplier: complex


def logistic(lam: complex, z):
    """P_lambda(z), works on scalars and numpy arrays."""
    return lam * z + z * z


def escape_radius(lam: complex, tol: Tolerances = DEFAULTS) -> float:
    """Radius beyond which every orbit of P_lambda diverges."""
    return tol.escape_scale * (1.0 + abs(lam))


def iterate(lam: complex, z0: complex, n: int, tol: Tolerances = DEFAULTS) -> OrbitTrace:
    """Iterate P_lambda n times from z0 and accumulate the derivative.

    Raises:
        Escaped if the orbit leaves the disk of radius ``escape_radius(lam)``.
        Overflow if a non finite value shows up.
    """
    if n < 0:
        raise DomainError(f"Number of iterations must be non negative, got {n}")
    lam, z = complex(lam), complex(z0)
    radius = escape_radius(lam, tol)
    if abs(z) > radius:
        raise Escaped(0, z)
    points = [z]
    derivative = 1.0 + 0.0j
    for step in range(1, n + 1):
        derivative *= lam + 2.0 * z
        z = lam * z + z * z
        if not cmath.isfinite(z) or not cmath.isfinite(derivative):
            raise Overflow(f"Non finite value at step {step} of the orbit of {z0}")
        if abs(z) > radius:
            raise Escaped(step, z)
        points.append(z)
    return OrbitTrace(complex(z0), lam, tuple(points), derivative)


def power_with_derivative(lam: complex, w, n: int):
    """P_lambda^n(w) and (P_lambda^n)'(w), vectorized over numpy arrays ``w``."""
    z = np.asarray(w, dtype=complex)
    derivative = np.ones_like(z)
    for _ in range(n):
        derivative = derivative * (lam + 2.0 * z)
        z = lam * z + z * z
    return z, derivative


def _power(lam: complex, z: complex, n: int) -> Tuple[complex, complex]:
    """Scalar version of ``power_with_derivative``."""
    derivative = 1.0 + 0.0j
    for _ in range(n):
        derivative *= lam + 2.0 * z
        z = lam * z + z * z
    return z, derivative


def newton_periodic_point(
    lam: complex, period: int, seed: complex, tol: Tolerances = DEFAULTS
) -> complex:
    """Newton iteration on z -> P_lambda^period(z) - z.

    Raises:
        NoConvergence if the residual is not below ``tol.tol_orbit`` after
        ``tol.max_newton_steps`` steps.
    """
    z = complex(seed)
    residual = float("inf")
    for step in range(tol.max_newton_steps):
        value, derivative = _power(lam, z, period)
        residual = abs(value - z)
        if not np.isfinite(residual):
            break
        if residual < tol.newton_residual_tol:
            break
        slope = derivative - 1.0
        if slope == 0:
            break
        delta = (value - z) / slope
        z -= delta
        if abs(delta) < tol.newton_step_tol * (1.0 + abs(z)):
            value, _ = _power(lam, z, period)
            residual = abs(value - z)
            L.debug("Newton step stalled at step %d, residual %.3e", step, residual)
            break
    if not residual < tol.tol_orbit:
        raise NoConvergence(
            f"Newton for a period {period} point of P_{lam} from {seed} ended with "
            f"residual {residual:.3e}"
        )
    return z


def exact_period(lam: complex, z: complex, period: int, tol: Tolerances = DEFAULTS) -> int:
    """Smallest divisor d of ``period`` with |P^d(z) - z| < tol.divisor_tol (or ``period``)."""
    for divisor in proper_divisors(period):
        value, _ = _power(lam, z, divisor)
        if abs(value - z) < tol.divisor_tol:
            return divisor
    return period


def cycle_from_point(lam: complex, z: complex, period: int) -> CycleRecord:
    """Build the cycle record through the periodic point z, without any check."""
    points: List[complex] = [complex(z)]
    multiplier = 1.0 + 0.0j
    for _ in range(period):
        multiplier *= lam + 2.0 * points[-1]
        points.append(lam * points[-1] + points[-1] ** 2)
    return CycleRecord(complex(lam), period, tuple(points[:period]), multiplier)


def find_periodic_orbit(
    lam: complex, period: int, seed: complex, tol: Tolerances = DEFAULTS
) -> CycleRecord:
    """Locate a cycle of exact period ``period`` of P_lambda with Newton from ``seed``.

    Raises:
        NoConvergence if Newton fails.
        WrongPeriod if the limit has a proper divisor of ``period`` as exact period.
    """
    if period < 1:
        raise DomainError(f"Period must be positive, got {period}")
    lam = complex(lam)
    z = newton_periodic_point(lam, period, seed, tol)
    found = exact_period(lam, z, period, tol)
    if found != period:
        raise WrongPeriod(found, period)
    return cycle_from_point(lam, z, period)


def critical_value(lam: complex) -> complex:
    """Critical value -lambda^2 / 4 of P_lambda."""
    return -lam * lam / 4.0


def critical_orbit_in_lambda(lam: complex, n: int) -> Tuple[complex, complex]:
    """P_lambda^n(-lambda^2/4) and its derivative with respect to lambda."""
    z = -lam * lam / 4.0
    dz = -lam / 2.0
    for _ in range(n):
        dz = z + (lam + 2.0 * z) * dz
        z = lam * z + z * z
    return z, dz


def find_misiurewicz(
    pq: IrreducibleRational, m: int, seed: complex, tol: Tolerances = DEFAULTS
) -> complex:
    """Parameter whose critical value lands on the fixed point 0 after q * m iterations.

    Newton in lambda on g(lambda) = P_lambda^{qm}(-lambda^2 / 4).

    Raises:
        NoConvergence if Newton fails.
        NotMinimal(m') if the critical value already reaches 0 after q * m' iterations, m' < m.
    """
    if m < 1:
        raise DomainError(f"Pre-period must be at least 1, got {m}")
    n = pq.q * m
    lam = complex(seed)
    residual = float("inf")
    for _ in range(tol.max_newton_steps):
        value, slope = critical_orbit_in_lambda(lam, n)
        residual = abs(value)
        if not np.isfinite(residual) or residual < tol.newton_residual_tol or slope == 0:
            break
        delta = value / slope
        lam -= delta
        if abs(delta) < tol.newton_step_tol * (1.0 + abs(lam)):
            residual = abs(critical_orbit_in_lambda(lam, n)[0])
            break
    if not residual < tol.tol_orbit:
        raise NoConvergence(
            f"Newton for a Misiurewicz parameter from {seed} ended with residual {residual:.3e}"
        )
    for shorter in range(m):
        value, _ = critical_orbit_in_lambda(lam, pq.q * shorter)
        if abs(value) < tol.divisor_tol:
            raise NotMinimal(shorter)
    L.debug("Misiurewicz parameter %s for %s, m=%d", lam, pq, m)
    return lam
