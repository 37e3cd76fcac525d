"""
Second order expansion of the rescaled coordinate Lambda along the multiplier circle.

With P = Log(rho) the log-multiplier of the satellite cycle,
Lambda(P) = -P / q - Res_{p/q} (P / q)^2 + O((P / q)^3), where Res_{p/q} is the iterative residue
of P_omega^q at 0. The residue is computed in two independent ways: as the Buff form circulation
at Lambda = 0 and as the intercept of a least squares fit of -(Lambda + P / q) / (P / q)^2 on the
multiplier circle rho = exp(i t).
"""
from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from satellite_lab.config import DEFAULTS, Tolerances
from satellite_lab.dynamics.residue import buff_H, lambda_from_big_lambda, pcal_from_H
from satellite_lab.exceptions import DomainError, IllConditionedFit, PrecisionLimit
from satellite_lab.parameters.multiplier import (
    HalfPlanePoint,
    big_lambda,
    continue_along_arc,
    continue_in_rho,
    multiplier_map,
)
from satellite_lab.utils import IrreducibleRational, parallel_map

L = logging.getLogger(__name__)

MIN_FIT_POINTS = 6
MAX_CONDITION = 1e12
RADIAL_LEG = np.pi / 4


@dataclass(frozen=True)
class ResidueReport:
    """Residue Res_{p/q} from the contour and from the fit, with the fit diagnostics."""

    pq: IrreducibleRational
    res_contour: complex
    res_fit: complex
    fit_residual: float
    linear_coefficient: complex


@dataclass(frozen=True)
class ResitfunctionCheck:
    """Buff circulation H(Lambda) against the tracked log-multiplier of the cycle."""

    big_lambda: complex
    h_value: complex
    h_expected: complex
    pcal_tracked: complex
    pcal_closed: complex


def lambda_of_t(
    pq: IrreducibleRational, t: float, config: Tolerances = DEFAULTS
) -> HalfPlanePoint:
    """Lambda at the multiplier rho = exp(i t) of the satellite cycle.

    The multiplier map is inverted along the radius up to exp(+-i pi / 4), then along the unit
    circle up to exp(i t).

    Raises:
        DomainError if t is 0 or |t| > pi.
    """
    if t == 0 or abs(t) > np.pi:
        raise DomainError(f"Expected 0 < |t| <= pi, got {t}")
    radial = float(np.sign(t)) * min(abs(t), RADIAL_LEG)
    solution = continue_in_rho(pq, cmath.exp(1j * radial), config)
    if abs(t) > RADIAL_LEG:
        solution = continue_along_arc(pq, solution, t, config)
    return big_lambda(pq, solution.lambda_)


def _check_precision(pq: IrreducibleRational, config: Tolerances) -> None:
    if pq.q > config.max_q:
        raise PrecisionLimit(
            f"q = {pq.q} exceeds {config.max_q}, the largest denominator handled in double "
            "precision"
        )


def residue_contour(pq: IrreducibleRational, config: Tolerances = DEFAULTS) -> complex:
    """Res_{p/q} as the circulation of the Buff form of P_omega^q at Lambda = 0.

    Raises:
        PrecisionLimit if q exceeds ``config.max_q``.
    """
    _check_precision(pq, config)
    value = buff_H(pq, 0j, config=config)
    L.info("Res_%s = %s (contour)", pq, value)
    return value


def residue_fit(
    pq: IrreducibleRational,
    t_list: Sequence[float],
    config: Tolerances = DEFAULTS,
    res_contour: Optional[complex] = None,
) -> ResidueReport:
    """Fit Res_{p/q} + c P / q to -(Lambda + P / q) / (P / q)^2 with P = i t.

    Args:
        pq: rotation number of the satellite.
        t_list: multiplier angles, at least six of them.
        config: numerical defaults.
        res_contour: contour residue to report, computed with ``residue_contour`` when None.

    Raises:
        IllConditionedFit if fewer than six points are given or the design matrix is singular.
        PrecisionLimit if q exceeds ``config.max_q``.
    """
    t_values = np.asarray(t_list, dtype=float)
    if len(t_values) < MIN_FIT_POINTS:
        raise IllConditionedFit(
            f"Fit needs at least {MIN_FIT_POINTS} points, got {len(t_values)}"
        )
    if res_contour is None:
        res_contour = residue_contour(pq, config)
    lambdas = np.array(
        [point.value for point in parallel_map(lambda t: lambda_of_t(pq, t, config), t_values)]
    )
    x = 1j * t_values / pq.q
    y = -(lambdas + x) / x**2
    design = np.stack([np.ones_like(x), x], axis=1)
    if np.linalg.cond(design) > MAX_CONDITION:
        raise IllConditionedFit(f"Design matrix of the fit for {pq} is ill-conditioned")
    coefficients, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < 2:
        raise IllConditionedFit(f"Design matrix of the fit for {pq} has rank {rank}")
    fit_residual = float(np.linalg.norm(design @ coefficients - y) / np.sqrt(len(y)))
    L.info("Res_%s = %s (fit), residual %.3e", pq, coefficients[0], fit_residual)
    return ResidueReport(
        pq=pq,
        res_contour=complex(res_contour),
        res_fit=complex(coefficients[0]),
        fit_residual=fit_residual,
        linear_coefficient=complex(coefficients[1]),
    )


def resitfunction_check(
    pq: IrreducibleRational, big_lambda_value: complex, config: Tolerances = DEFAULTS
) -> ResitfunctionCheck:
    """Compare H(Lambda) with 1 / Lambda + q / P, P tracked from the component center.

    Also closes the loop with P = -q Lambda / (1 - Lambda H(Lambda)).
    """
    big_lambda_value = complex(big_lambda_value)
    if big_lambda_value == 0:
        raise DomainError("Lambda must be non zero")
    h_value = buff_H(pq, big_lambda_value, config=config)
    solution = multiplier_map(pq, lambda_from_big_lambda(pq, big_lambda_value), config)
    pcal = cmath.log(solution.rho)
    return ResitfunctionCheck(
        big_lambda=big_lambda_value,
        h_value=h_value,
        h_expected=1 / big_lambda_value + pq.q / pcal,
        pcal_tracked=pcal,
        pcal_closed=pcal_from_H(pq.q, big_lambda_value, h_value),
    )
