"""
Multiplier maps of the satellite components of the logistic family.

The satellite component H_{p/q} is attached to the unit disk at the root omega_{p/q}. Its
multiplier map rho sends lambda to the multiplier of the q-cycle born from the fixed point 0 at
the root: rho = 1 at the root and rho = 0 at the center, where the cycle passes through the
critical point -lambda / 2. For q = 1 the cycle is the fixed point 1 - lambda and rho = 2 - lambda.
"""
from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, List, Tuple

import numpy as np

from satellite_lab.config import DEFAULTS, Tolerances
from satellite_lab.dynamics.logistic import (
    CycleRecord,
    cycle_from_point,
    exact_period,
    newton_periodic_point,
)
from satellite_lab.exceptions import (
    BranchCut,
    ContinuationFailure,
    DomainError,
    NoConvergence,
    NumericalError,
    OutOfDomain,
    SingularJacobian,
    WrongPeriod,
)
from satellite_lab.utils import IrreducibleRational, proper_divisors

L = logging.getLogger(__name__)

CENTER_SEED_OFFSETS = (0.5, 1.0, 1.5, 2.0, 3.0)
CENTER_SEED_ANGLES = (0.0, 0.5, -0.5)
ROOT_TOLERANCE = 1e-14
UNIT_CIRCLE_GATE = 1e-9


@dataclass(frozen=True)
class ComponentId:
    """The satellite component H_{p/q} with root omega_{p/q}."""

    pq: IrreducibleRational


@dataclass(frozen=True)
class SublimbId:
    """The p'/q'-sublimb (``inner``) of the p/q-limb (``outer``)."""

    outer: IrreducibleRational
    inner: IrreducibleRational

    def __post_init__(self):
        if self.inner.p == 0 and self.outer.p != 0:
            raise DomainError(f"Inner angle 0/1 is only allowed in the 0/1 limb, got {self}")

    def __str__(self) -> str:
        return f"{self.outer}:{self.inner}"


@dataclass(frozen=True)
class MultiplierSolution:
    """A point (lambda, cycle) on the graph of the multiplier map."""

    lambda_: complex
    cycle: CycleRecord
    rho: complex


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point of the closed right half-plane, in Lambda or M coordinates."""

    value: complex

    def __post_init__(self):
        if self.value.real < -1e-12:
            raise OutOfDomain(f"{self.value} is not in the closed right half-plane")


def c_of_lambda(lam: complex) -> complex:
    """The quadratic family parameter c = lambda / 2 - lambda^2 / 4 conjugate to P_lambda."""
    return lam / 2 - lam * lam / 4


def log_power(lam, q: int):
    """Principal logarithm of lambda^q; vectorized over numpy arrays, no branch check."""
    if isinstance(lam, np.ndarray):
        return np.log(lam**q)
    return cmath.log(complex(lam) ** q)


def big_lambda(pq: IrreducibleRational, lam: complex) -> HalfPlanePoint:
    """Rescaled coordinate Lambda = Log(lambda^q).

    Raises:
        BranchCut if lambda^q lies on the closed negative real axis.
        OutOfDomain if the logarithm has a negative real part.
    """
    power = complex(lam) ** pq.q
    if power.real <= 0 and abs(power.imag) <= 1e-15 * max(1.0, abs(power)):
        raise BranchCut(f"lambda^{pq.q} = {power} lies on the negative real axis")
    return HalfPlanePoint(cmath.log(power))


def _critical_return(lam: complex, n: int) -> Tuple[complex, complex]:
    """P_lambda^n(-lambda/2) + lambda/2 and its derivative in lambda."""
    z = -lam / 2
    dz = -0.5 + 0j
    for _ in range(n):
        dz = z + (lam + 2 * z) * dz
        z = lam * z + z * z
    return z + lam / 2, dz + 0.5


def _newton_center(q: int, seed: complex, config: Tolerances) -> complex:
    lam = complex(seed)
    for _ in range(config.max_newton_steps):
        value, slope = _critical_return(lam, q)
        if not cmath.isfinite(value) or slope == 0:
            break
        step = value / slope
        lam -= step
        if abs(step) < config.newton_step_tol * (1 + abs(lam)):
            break
    residual = abs(_critical_return(lam, q)[0])
    if not residual < config.tol_orbit:
        raise NoConvergence(f"Center Newton from {seed} ended with residual {residual:.3e}")
    return lam


def _center_seeds(pq: IrreducibleRational) -> Iterator[complex]:
    scale = 1.0 / pq.q**2
    for offset in CENTER_SEED_OFFSETS:
        for angle in CENTER_SEED_ANGLES:
            yield pq.omega * (1 + offset * scale) * cmath.exp(2j * np.pi * angle * scale)


@lru_cache(maxsize=None)
def _component_center(pq: IrreducibleRational, config: Tolerances) -> complex:
    if pq.q == 1:
        return 2.0 + 0j
    found: List[complex] = []
    for seed in _center_seeds(pq):
        try:
            lam = _newton_center(pq.q, seed, config)
        except NoConvergence:
            continue
        if abs(lam) <= 1 or any(
            abs(_critical_return(lam, d)[0]) < config.divisor_tol for d in proper_divisors(pq.q)
        ):
            continue
        found.append(lam)
    if not found:
        raise NoConvergence(f"No center of period {pq.q} found near the root of {pq}")
    center = min(found, key=lambda lam: abs(lam - pq.omega))
    L.debug("Center of H_%s: %s", pq, center)
    return center


def component_center(pq: IrreducibleRational, config: Tolerances = DEFAULTS) -> complex:
    """Center of H_{p/q}: the parameter whose q-cycle passes through the critical point.

    Solved by Newton on P_lambda^q(-lambda/2) + lambda/2 = 0 from seeds placed just outside the
    unit disk near omega_{p/q}; among the roots of exact period q outside the unit disk the one
    nearest to the root omega_{p/q} is returned.

    Raises:
        NoConvergence if no seed leads to an admissible center.
    """
    return _component_center(pq, config)


def center_solution(pq: IrreducibleRational, config: Tolerances = DEFAULTS) -> MultiplierSolution:
    """The superattracting solution rho = 0 at the center of H_{p/q}."""
    lam = component_center(pq, config)
    cycle = cycle_from_point(lam, -lam / 2, pq.q)
    return MultiplierSolution(lam, cycle, cycle.multiplier)


def root_solution(pq: IrreducibleRational) -> MultiplierSolution:
    """The parabolic solution rho = 1 at the root omega_{p/q}.

    For q > 1 the cycle has collapsed onto the fixed point 0; for q = 1 the fixed point 1 - lambda
    collides with 0 as well.
    """
    cycle = CycleRecord(pq.omega, pq.q, tuple(0j for _ in range(pq.q)), 1.0 + 0j)
    return MultiplierSolution(pq.omega, cycle, 1.0 + 0j)


def _track_step(
    lam: complex, q: int, z_previous: complex, config: Tolerances
) -> complex:
    z = newton_periodic_point(lam, q, z_previous, config)
    if abs(z - z_previous) > config.continuation_max_jump:
        raise ContinuationFailure(f"Cycle point jumped from {z_previous} to {z}")
    if exact_period(lam, z, q, config) != q:
        raise WrongPeriod(exact_period(lam, z, q, config), q)
    return z


def continue_cycle(
    q: int,
    lam_start: complex,
    z_start: complex,
    lam_target: complex,
    config: Tolerances = DEFAULTS,
) -> complex:
    """Track the periodic point z_start of P_lambda^q along the segment [lam_start, lam_target].

    The step along the segment starts at ``config.continuation_initial_step`` and is halved on
    failure, doubled on success.

    Raises:
        ContinuationFailure if the step falls below ``config.continuation_min_step``.
    """
    position, step = 0.0, config.continuation_initial_step
    z = complex(z_start)
    while position < 1.0:
        step = min(step, 1.0 - position)
        lam = lam_start + (position + step) * (lam_target - lam_start)
        try:
            z = _track_step(lam, q, z, config)
        except NumericalError as error:
            step /= 2
            L.debug("Continuation halves its step to %.3e: %s", step, error)
            if step < config.continuation_min_step:
                raise ContinuationFailure(
                    f"Lost the {q}-cycle between {lam_start} and {lam_target} at "
                    f"fraction {position:.6f}"
                ) from error
            continue
        position += step
        step *= 2
    return z


def multiplier_map(
    pq: IrreducibleRational, lam: complex, config: Tolerances = DEFAULTS
) -> MultiplierSolution:
    """Multiplier rho_{p/q}(lambda) of the cycle continued from the center of H_{p/q}.

    Raises:
        ContinuationFailure if the cycle cannot be tracked from the center to lambda.
    """
    lam = complex(lam)
    if abs(lam - pq.omega) < ROOT_TOLERANCE:
        return root_solution(pq)
    start = center_solution(pq, config)
    z = continue_cycle(pq.q, start.lambda_, start.cycle.points[0], lam, config)
    cycle = cycle_from_point(lam, z, pq.q)
    return MultiplierSolution(lam, cycle, cycle.multiplier)


def _augmented_system(lam: complex, z: complex, q: int):
    """Residuals and Jacobian of (P^q(z) - z, (P^q)'(z)) in the unknowns (z, lambda)."""
    a, b, aa, ab = 1 + 0j, 0j, 0j, 0j
    w = z
    for _ in range(q):
        slope = lam + 2 * w
        aa, ab = 2 * a * a + slope * aa, (1 + 2 * b) * a + slope * ab
        a, b = slope * a, w + slope * b
        w = lam * w + w * w
    jacobian = np.array([[a - 1, b], [aa, ab]], dtype=complex)
    return w - z, a, jacobian


def _polish(lam: complex, z: complex, q: int, rho_target: complex) -> Tuple[complex, complex]:
    """One more Newton step on (z, lambda), kept only when it lowers the residual."""
    orbit_gap, multiplier, jacobian = _augmented_system(lam, z, q)
    rhs = np.array([orbit_gap, multiplier - rho_target])
    try:
        dz, dlam = np.linalg.solve(jacobian, -rhs)
    except np.linalg.LinAlgError:
        return lam, z
    orbit_gap, multiplier, _ = _augmented_system(lam + dlam, z + dz, q)
    if max(abs(orbit_gap), abs(multiplier - rho_target)) < float(np.max(np.abs(rhs))):
        return lam + dlam, z + dz
    return lam, z


def invert_multiplier(
    pq: IrreducibleRational,
    rho_target: complex,
    seed: MultiplierSolution,
    config: Tolerances = DEFAULTS,
) -> MultiplierSolution:
    """Solve rho_{p/q}(lambda) = rho_target by Newton on (z, lambda) from ``seed``.

    The unknowns are a cycle point z and the parameter lambda, the equations
    P_lambda^q(z) = z and (P_lambda^q)'(z) = rho_target. At rho_target = 1 the system is
    singular (the cycle collides with 0) and the root omega_{p/q} is returned.

    Raises:
        NoConvergence if the residuals do not fall below ``config.augmented_residual_tol``.
        SingularJacobian if the Jacobian cannot be inverted.
    """
    rho_target = complex(rho_target)
    if abs(rho_target - 1) < ROOT_TOLERANCE:
        return root_solution(pq)
    q = pq.q
    lam, z = complex(seed.lambda_), complex(seed.cycle.points[0])
    residual = float("inf")
    for _ in range(config.max_newton_steps):
        orbit_gap, multiplier, jacobian = _augmented_system(lam, z, q)
        rhs = np.array([orbit_gap, multiplier - rho_target])
        residual = float(np.max(np.abs(rhs)))
        if not np.isfinite(residual):
            break
        if residual < config.augmented_residual_tol:
            break
        try:
            dz, dlam = np.linalg.solve(jacobian, -rhs)
        except np.linalg.LinAlgError as error:
            raise SingularJacobian(f"Singular Jacobian at lambda={lam}, z={z}") from error
        z, lam = z + dz, lam + dlam
        if max(abs(dz), abs(dlam)) < config.newton_step_tol * (1 + abs(lam) + abs(z)):
            orbit_gap, multiplier, _ = _augmented_system(lam, z, q)
            residual = max(abs(orbit_gap), abs(multiplier - rho_target))
            if residual < config.augmented_stall_tol:
                residual = 0.0
            break
    if not residual < config.augmented_residual_tol:
        raise NoConvergence(
            f"Inverse multiplier for rho={rho_target} in {pq} ended with residual {residual:.3e}"
        )
    lam, z = _polish(lam, z, q, rho_target)
    if exact_period(lam, z, q, config) != q:
        raise NoConvergence(f"Inverse multiplier collapsed onto a shorter cycle at {lam}")
    cycle = cycle_from_point(lam, z, q)
    return MultiplierSolution(lam, cycle, cycle.multiplier)


def _continue(
    pq: IrreducibleRational,
    path: Callable[[float], complex],
    solution: MultiplierSolution,
    config: Tolerances,
) -> MultiplierSolution:
    """Follow rho = path(s) for s from 0 to 1 by successive calls to ``invert_multiplier``."""
    position, step = 0.0, config.continuation_initial_step
    while position < 1.0:
        step = min(step, 1.0 - position)
        try:
            candidate = invert_multiplier(pq, path(position + step), solution, config)
            if abs(candidate.lambda_ - solution.lambda_) > config.continuation_max_jump:
                raise ContinuationFailure(f"Parameter jumped to {candidate.lambda_}")
        except NumericalError as error:
            step /= 2
            if step < config.continuation_min_step:
                raise ContinuationFailure(
                    f"Lost the branch of {pq} towards rho={path(1.0)} at {position:.6f}"
                ) from error
            continue
        solution, position, step = candidate, position + step, 2 * step
    return solution


def continue_in_rho(
    pq: IrreducibleRational, rho_target: complex, config: Tolerances = DEFAULTS
) -> MultiplierSolution:
    """Invert the multiplier map along the radius from rho = 0 to ``rho_target``.

    Raises:
        ContinuationFailure if the step falls below ``config.continuation_min_step``.
    """
    rho_target = complex(rho_target)
    if abs(rho_target - 1) < ROOT_TOLERANCE:
        return root_solution(pq)
    return _continue(pq, lambda s: s * rho_target, center_solution(pq, config), config)


def continue_along_arc(
    pq: IrreducibleRational,
    start: MultiplierSolution,
    theta_end: float,
    config: Tolerances = DEFAULTS,
) -> MultiplierSolution:
    """Invert the multiplier map along the circle |rho| = |start.rho| up to ``theta_end``.

    The arc runs from the argument of ``start.rho`` to ``theta_end`` without wrapping, so it
    must not cross rho = 1 when |start.rho| = 1.

    Raises:
        DomainError if the arc passes through rho = 1.
        ContinuationFailure if the step falls below ``config.continuation_min_step``.
    """
    radius, theta_start = abs(start.rho), cmath.phase(start.rho)
    crosses_zero = min(theta_start, theta_end) <= 0 <= max(theta_start, theta_end)
    if crosses_zero and abs(radius - 1) < UNIT_CIRCLE_GATE:
        raise DomainError(f"The arc from {theta_start} to {theta_end} passes through rho = 1")
    return _continue(
        pq,
        lambda s: radius * cmath.exp(1j * (theta_start + s * (theta_end - theta_start))),
        start,
        config,
    )


def multiplier_derivative(solution: MultiplierSolution, q: int) -> complex:
    """Derivative d rho / d lambda of the multiplier map at ``solution``.

    Raises:
        DomainError at a multiplier 1, where the cycle collides with another one.
    """
    _, _, jacobian = _augmented_system(solution.lambda_, solution.cycle.points[0], q)
    (shifted, slope_lambda), (slope_z_z, slope_z_lambda) = jacobian
    if abs(shifted) < ROOT_TOLERANCE:
        raise DomainError(f"The multiplier map is not differentiable at rho = {solution.rho}")
    return complex(slope_z_lambda - slope_z_z * slope_lambda / shifted)


def sublimb_root(sublimb: SublimbId, config: Tolerances = DEFAULTS) -> MultiplierSolution:
    """Root of the p'/q'-sublimb of H_{p/q}, where rho_{p/q} = omega_{p'/q'}."""
    solution = continue_in_rho(sublimb.outer, sublimb.inner.omega, config)
    L.debug("Root of sublimb %s: %s", sublimb, solution.lambda_)
    return solution
