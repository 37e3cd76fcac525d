"""
Contour integral invariants of fixed points: multiplicity, holomorphic index, iterative residue
and the circulation of the Buff form.

Every circulation is normalised by 1 / (2 pi i), so that the integral of dw / w over any circle
around 0 is 1. The trapezoid rule on equispaced nodes converges geometrically for integrands
analytic on a neighbourhood of the circle; the number of nodes is doubled until two successive
values agree.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from satellite_lab.config import DEFAULTS, Tolerances
from satellite_lab.dynamics.logistic import power_with_derivative
from satellite_lab.exceptions import (
    DomainError,
    FixedPointOnContour,
    LogBranchViolation,
    NoQuadratureConvergence,
    NumericalError,
    RoundingAmbiguous,
)
from satellite_lab.utils import IrreducibleRational

L = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FixedPointInvariants:
    """Multiplicity, holomorphic index and iterative residue of a fixed point.

    ``radius_used`` and ``nodes_used`` record the circle and the node count of the quadrature.
    """

    multiplicity: int
    index: complex
    resit: complex
    radius_used: float
    nodes_used: int

    def __post_init__(self):
        if self.multiplicity < 1:
            raise RoundingAmbiguous(f"Multiplicity must be at least 1, got {self.multiplicity}")
        if abs(self.resit - (self.multiplicity / 2 - self.index)) > 1e-12 * (
            1.0 + abs(self.index)
        ):
            raise NumericalError("resit differs from multiplicity / 2 - index")


def _circle(center: complex, radius: float, nodes: int, offset: float = 0.0) -> np.ndarray:
    angles = 2.0 * np.pi * (np.arange(nodes) + offset) / nodes
    return center + radius * np.exp(1j * angles)


def _trapezoid(
    f: Integrand, center: complex, radius: float, tol: float, config: Tolerances
) -> Tuple[complex, int]:
    """Node doubling trapezoid rule; returns the value and the final node count."""
    nodes = config.quad_n_min
    with np.errstate(all="ignore"):
        w = _circle(center, radius, nodes)
        samples = f(w) * (w - center)
        scale = float(np.max(np.abs(samples)))
        current = complex(np.mean(samples))
        while 2 * nodes <= config.quad_n_max:
            w = _circle(center, radius, nodes, offset=0.5)
            samples = f(w) * (w - center)
            scale = max(scale, float(np.max(np.abs(samples))))
            refined = 0.5 * (current + complex(np.mean(samples)))
            nodes *= 2
            if not np.isfinite(refined):
                raise NoQuadratureConvergence(
                    f"Non finite integrand on the circle C({center}, {radius})"
                )
            if abs(refined - current) < tol * max(1.0, scale):
                return refined, nodes
            current = refined
    raise NoQuadratureConvergence(
        f"Trapezoid rule on C({center}, {radius}) did not converge with {nodes} nodes"
    )


def contour_integral(
    f: Integrand,
    center: complex,
    radius: float,
    tol: Optional[float] = None,
    config: Tolerances = DEFAULTS,
) -> complex:
    """Compute (1 / 2 pi i) times the integral of f over the circle C(center, radius).

    Args:
        f: integrand, vectorized over numpy arrays of complex numbers.
        center: center of the circle.
        radius: radius of the circle, positive.
        tol: convergence gate relative to the integrand scale, defaults to ``config.quad_tol``.
        config: numerical defaults.

    Returns:
        the circulation, i.e. the mean of f(w) (w - center) over the equispaced nodes.

    Raises:
        NoQuadratureConvergence if the node count exceeds ``config.quad_n_max``.
    """
    if not radius > 0:
        raise DomainError(f"Radius must be positive, got {radius}")
    tol = config.quad_tol if tol is None else tol
    value, _ = _trapezoid(f, complex(center), float(radius), tol, config)
    return value


def iterated_map(lam: complex, power: int) -> Callable[[np.ndarray], Tuple[np.ndarray, ...]]:
    """The map w -> (F(w), F'(w)) for F = P_lambda^power."""

    def evaluate(w: np.ndarray):
        return power_with_derivative(lam, w, power)

    return evaluate


def _check_contour(
    mapping, center: complex, radius: float, config: Tolerances, nodes: int = 512
) -> np.ndarray:
    """Sample F' on the circle after checking that no fixed point of F is too close to it."""
    w = _circle(center, radius, nodes)
    with np.errstate(all="ignore"):
        values, derivatives = mapping(w)
        gap = float(np.min(np.abs(values - w)))
    if not gap > config.contour_safety:
        raise FixedPointOnContour(
            f"min |F(w) - w| = {gap:.3e} on C({center}, {radius:.4g})"
        )
    return derivatives


def _multiplicity_integrand(mapping) -> Integrand:
    def integrand(w):
        values, derivatives = mapping(w)
        return (derivatives - 1.0) / (values - w)

    return integrand


def _index_integrand(mapping) -> Integrand:
    def integrand(w):
        values, _ = mapping(w)
        return 1.0 / (w - values)

    return integrand


def _round_count(value: complex, config: Tolerances) -> int:
    count = int(round(value.real))
    if abs(value - count) > config.rounding_gate:
        raise RoundingAmbiguous(f"Multiplicity integral {value} is not close to an integer")
    return count


def invariants_on_circle(
    lam: complex, power: int, z0: complex, radius: float, config: Tolerances = DEFAULTS
) -> FixedPointInvariants:
    """Fixed point invariants of P_lambda^power at z0 on the given circle."""
    mapping = iterated_map(complex(lam), power)
    _check_contour(mapping, z0, radius, config)
    raw, nodes = _trapezoid(_multiplicity_integrand(mapping), z0, radius, config.quad_tol, config)
    multiplicity = _round_count(raw, config)
    index, index_nodes = _trapezoid(
        _index_integrand(mapping), z0, radius, config.quad_tol, config
    )
    return FixedPointInvariants(
        multiplicity=multiplicity,
        index=index,
        resit=multiplicity / 2 - index,
        radius_used=radius,
        nodes_used=max(nodes, index_nodes),
    )


def fixed_point_invariants(
    lam: complex,
    power: int,
    z0: complex,
    radius: Optional[float] = None,
    expected_multiplicity: Optional[int] = None,
    config: Tolerances = DEFAULTS,
) -> FixedPointInvariants:
    """Multiplicity, index and iterative residue of the fixed point z0 of F = P_lambda^power.

    When ``radius`` is None, the circle is picked from ``config.fixed_point_radii``, largest
    first. A radius is accepted when its multiplicity equals ``expected_multiplicity`` or, when
    no multiplicity is expected, when the next smaller radius gives the same invariants.

    Raises:
        FixedPointOnContour if a fixed point of F is too close to the circle.
        RoundingAmbiguous if the multiplicity integral is not close to an integer.
    """
    if power < 1:
        raise DomainError(f"Power must be positive, got {power}")
    z0 = complex(z0)
    if radius is not None:
        return invariants_on_circle(lam, power, z0, radius, config)

    previous: Optional[FixedPointInvariants] = None
    last_error: Optional[NumericalError] = None
    for candidate in config.fixed_point_radii:
        try:
            current = invariants_on_circle(lam, power, z0, candidate, config)
        except (FixedPointOnContour, RoundingAmbiguous, NoQuadratureConvergence) as error:
            L.debug("Rejected radius %.4g: %s", candidate, error)
            last_error, previous = error, None
            continue
        if expected_multiplicity is not None:
            if current.multiplicity == expected_multiplicity:
                L.debug("Accepted radius %.4g for z0=%s", candidate, z0)
                return current
            L.debug(
                "Radius %.4g encloses multiplicity %d, expected %d",
                candidate,
                current.multiplicity,
                expected_multiplicity,
            )
        elif (
            previous is not None
            and previous.multiplicity == current.multiplicity
            and abs(previous.index - current.index) < 1e-6 * (1.0 + abs(current.index))
        ):
            return previous
        previous = current
    if last_error is not None:
        raise last_error
    raise RoundingAmbiguous(f"No stable multiplicity around {z0} on the radius ladder")


def resit_iterate_check(
    lam: complex, power_base: int, n: int, z0: complex, config: Tolerances = DEFAULTS
) -> Tuple[complex, complex]:
    """Iterative residues of F = P_lambda^power_base and of F^n at the parabolic point z0.

    Returns:
        the pair (resit(F, z0), n * resit(F^n, z0)), equal for a parabolic fixed point.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    base = fixed_point_invariants(lam, power_base, z0, config=config)
    if n == 1:
        return base.resit, base.resit
    iterated = fixed_point_invariants(
        lam, power_base * n, z0, expected_multiplicity=base.multiplicity, config=config
    )
    return base.resit, n * iterated.resit


def lambda_from_big_lambda(pq: IrreducibleRational, big_lambda: complex) -> complex:
    """The parameter lambda = omega_{p/q} exp(Lambda / q), so that Log(lambda^q) = Lambda."""
    if big_lambda == 0:
        return pq.omega
    return pq.omega * complex(np.exp(complex(big_lambda) / pq.q))


def _buff_integrand(mapping) -> Integrand:
    def integrand(w):
        values, derivatives = mapping(w)
        return (derivatives - 1.0) / ((values - w) * np.log(derivatives))

    return integrand


def _buff_circulation(
    mapping, q: int, radius: float, config: Tolerances
) -> Tuple[complex, int]:
    derivatives = _check_contour(mapping, 0j, radius, config)
    if not np.all(np.abs(derivatives - 1.0) < 1.0):
        raise LogBranchViolation(f"(F^q)' leaves D(1, 1) on C(0, {radius:.4g})")
    count = _round_count(
        _trapezoid(_multiplicity_integrand(mapping), 0j, radius, config.quad_tol, config)[0],
        config,
    )
    if count != q + 1:
        raise FixedPointOnContour(
            f"C(0, {radius:.4g}) encloses {count} fixed points instead of {q + 1}"
        )
    return _trapezoid(_buff_integrand(mapping), 0j, radius, config.quad_tol, config)


def buff_H(
    pq: IrreducibleRational,
    big_lambda: complex,
    radius: Optional[float] = None,
    config: Tolerances = DEFAULTS,
) -> complex:
    """Circulation of the Buff form of F = P_lambda^q, lambda = omega_{p/q} exp(Lambda / q).

    The Buff form is (F'(w) - 1) dw / ((F(w) - w) Log F'(w)). Around the q + 1 fixed points of
    F near 0 it has residue 1 / Lambda at 0 and 1 / Log(rho) at each point of the q-cycle, so the
    circulation is 1 / Lambda + q / Log(rho); at Lambda = 0 it is the iterative residue of
    P_omega^q at 0.

    Args:
        pq: rotation number of the satellite.
        big_lambda: rescaled coordinate Lambda.
        radius: circle radius; picked from ``config.buff_radii`` when None.
        config: numerical defaults.

    Raises:
        LogBranchViolation if (F^q)' leaves D(1, 1) on every candidate circle.
        FixedPointOnContour if no candidate circle isolates the q + 1 fixed points.
    """
    mapping = iterated_map(lambda_from_big_lambda(pq, big_lambda), pq.q)
    radii = config.buff_radii if radius is None else (radius,)
    last_error: NumericalError = LogBranchViolation(f"No admissible radius for {pq}")
    for candidate in radii:
        try:
            value, nodes = _buff_circulation(mapping, pq.q, candidate, config)
        except (LogBranchViolation, FixedPointOnContour, RoundingAmbiguous) as error:
            L.debug("Buff form: rejected radius %.4g: %s", candidate, error)
            last_error = error
            continue
        L.debug(
            "Buff form of %s at Lambda=%s: radius %.4g, %d nodes", pq, big_lambda, candidate, nodes
        )
        return value
    raise last_error


def pcal_from_H(q: int, big_lambda: complex, h_value: complex) -> complex:
    """Log multiplier of the q-cycle, -q Lambda / (1 - Lambda H), from the Buff circulation."""
    if big_lambda == 0:
        return 0j
    return -q * big_lambda / (1.0 - big_lambda * h_value)
