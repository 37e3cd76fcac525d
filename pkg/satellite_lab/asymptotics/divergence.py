"""
Divergence of the hyperbolic distance between the rescaled coordinates of two satellites.

For rotation numbers p/q and P/Q, Lambda(rho) and M(rho) are the rescaled coordinates of the
parameters where the satellite cycles of the two components have the same multiplier rho. Their
hyperbolic distance in the right half-plane grows like 2 log(|Q - q| / t) as rho = exp(i t)
tends to 1, and the same divergence holds for the roots of the small sublimbs of angle
(n^2 - 1) / n^3.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from satellite_lab.asymptotics.expansion import lambda_of_t, residue_contour
from satellite_lab.config import DEFAULTS, EXPERIMENTS, Tolerances
from satellite_lab.dynamics.logistic import find_misiurewicz
from satellite_lab.exceptions import DomainError, NumericalError
from satellite_lab.geometry.half_plane import dist_hr
from satellite_lab.parameters.limbs import sublimb_diameter
from satellite_lab.parameters.multiplier import (
    HalfPlanePoint,
    SublimbId,
    big_lambda,
    sublimb_root,
)
from satellite_lab.utils import IrreducibleRational, parallel_map, sublimb_rational

L = logging.getLogger(__name__)

WITNESS_DEPTHS = (1, 2, 3)


@dataclass(frozen=True)
class ExperimentRecord:
    """One point of a divergence scan."""

    t: float
    big_lambda: HalfPlanePoint
    M: HalfPlanePoint
    dist: float
    bound: float
    signed_bound: float


@dataclass(frozen=True)
class LimbScanRecord:
    """Root and diameters of the (n^2 - 1) / n^3 sublimb of a satellite."""

    n: int
    root_lambda: HalfPlanePoint
    re_lower_bound: float
    hyp_diam: float
    euclid_diam: float


@dataclass(frozen=True)
class CorollaryRecord:
    """Distance between corresponding sublimb roots of two satellites.

    ``witness`` is a parameter whose critical value lands on 0, found from the sublimb root of
    the first satellite, and ``witness_offset`` its hyperbolic distance to that root.
    """

    n: int
    dist: float
    big_lambda: HalfPlanePoint
    M: HalfPlanePoint
    witness: Optional[complex] = None
    witness_offset: float = float("nan")


def chord_bound(q: int, big_q: int, t: float) -> Tuple[float, float]:
    """The chord estimates 2 log(|Q - q| / t) and 2 log((Q - q) / t), NaN when undefined."""
    gap = big_q - q
    bound = 2.0 * np.log(abs(gap) / t) if gap != 0 else float("nan")
    signed = 2.0 * np.log(gap / t) if gap > 0 else float("nan")
    return float(bound), float(signed)


def divergence_scan(
    pq: IrreducibleRational,
    big_pq: IrreducibleRational,
    t_grid: Sequence[float],
    config: Tolerances = DEFAULTS,
) -> List[ExperimentRecord]:
    """Distance between Lambda(exp(i t)) under p/q and M(exp(i t)) under P/Q along ``t_grid``.

    Records are returned in the order of ``t_grid``.
    """
    if pq.q == big_pq.q:
        L.warning("Equal denominators %d: the distance is not expected to diverge", pq.q)

    def _record(t: float) -> ExperimentRecord:
        first = lambda_of_t(pq, t, config)
        second = lambda_of_t(big_pq, t, config)
        bound, signed = chord_bound(pq.q, big_pq.q, t)
        return ExperimentRecord(
            t=float(t),
            big_lambda=first,
            M=second,
            dist=dist_hr(first.value, second.value),
            bound=bound,
            signed_bound=signed,
        )

    records = parallel_map(_record, list(t_grid))
    L.info("Divergence scan %s vs %s: %d points", pq, big_pq, len(records))
    return records


def small_limb_scan(
    pq: IrreducibleRational,
    n_range: Sequence[int],
    resolution: int = EXPERIMENTS.limb_resolution,
    max_iter: int = EXPERIMENTS.max_iter,
    config: Tolerances = DEFAULTS,
) -> List[LimbScanRecord]:
    """Roots and diameters of the (n^2 - 1) / n^3 sublimbs of the p/q satellite.

    The lower bound on the real part of the root is Re(Res_{p/q}) 4 pi^2 / (q^2 n^2).
    """
    residue = residue_contour(pq, config)

    def _record(n: int) -> LimbScanRecord:
        sublimb = SublimbId(pq, sublimb_rational(n))
        root = sublimb_root(sublimb, config)
        euclid, hyperbolic = sublimb_diameter(sublimb, resolution, max_iter, config=config)
        return LimbScanRecord(
            n=n,
            root_lambda=big_lambda(pq, root.lambda_),
            re_lower_bound=float(residue.real * 4 * np.pi**2 / (pq.q**2 * n**2)),
            hyp_diam=hyperbolic,
            euclid_diam=euclid,
        )

    return parallel_map(_record, list(n_range))


def _witness(
    pq: IrreducibleRational, root: complex, config: Tolerances
) -> Tuple[Optional[complex], float]:
    for m in WITNESS_DEPTHS:
        try:
            lam = find_misiurewicz(pq, m, root, config)
            offset = dist_hr(big_lambda(pq, lam).value, big_lambda(pq, root).value)
        except (NumericalError, DomainError) as error:
            L.debug("No witness with m=%d near %s: %s", m, root, error)
            continue
        return lam, offset
    return None, float("nan")


def corollary_check(
    pq: IrreducibleRational,
    big_pq: IrreducibleRational,
    n_range: Sequence[int],
    with_witnesses: bool = False,
    config: Tolerances = DEFAULTS,
) -> List[CorollaryRecord]:
    """Distance between the Lambda-roots of corresponding sublimbs of p/q and P/Q.

    The sublimbs of angle (n^2 - 1) / n^3 of both satellites have hyperbolically small diameters,
    so their roots stand for any pair of corresponding parameters in them.
    """

    def _record(n: int) -> CorollaryRecord:
        inner = sublimb_rational(n)
        first = sublimb_root(SublimbId(pq, inner), config).lambda_
        second = sublimb_root(SublimbId(big_pq, inner), config).lambda_
        first_point, second_point = big_lambda(pq, first), big_lambda(big_pq, second)
        witness, offset = _witness(pq, first, config) if with_witnesses else (None, float("nan"))
        return CorollaryRecord(
            n=n,
            dist=dist_hr(first_point.value, second_point.value),
            big_lambda=first_point,
            M=second_point,
            witness=witness,
            witness_offset=offset,
        )

    return parallel_map(_record, list(n_range))
