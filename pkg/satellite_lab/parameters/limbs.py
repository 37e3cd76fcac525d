"""
Membership in the connectedness locus of the logistic family, Yoccoz disks and the pixel scan of
sublimbs.
"""
from __future__ import annotations

import cmath
import logging
from collections import deque
from typing import Deque, Dict, Optional, Tuple

import numpy as np

from satellite_lab.config import DEFAULTS, Tolerances
from satellite_lab.dynamics.logistic import cycle_from_point, newton_periodic_point
from satellite_lab.exceptions import DomainError, LimbUnresolved, NumericalError, RootNotMember
from satellite_lab.geometry.half_plane import dist_hr_array
from satellite_lab.parameters.multiplier import (
    HalfPlanePoint,
    SublimbId,
    log_power,
    multiplier_derivative,
    sublimb_root,
)
from satellite_lab.utils import IrreducibleRational, parallel_map

L = logging.getLogger(__name__)

LOG2 = float(np.log(2.0))
NEIGHBOURS = ((1, 0), (-1, 0), (0, 1), (0, -1))
PAIRWISE_CHUNK = 2048


def membership(
    lam: complex, max_iter: int, config: Tolerances = DEFAULTS
) -> Tuple[bool, Optional[int]]:
    """Whether the critical orbit of P_lambda stays bounded for ``max_iter`` steps.

    Returns:
        (True, None) for a member, (False, k) when the critical orbit leaves the escape disk at
        step k.
    """
    if max_iter < 1:
        raise DomainError(f"max_iter must be positive, got {max_iter}")
    lam = complex(lam)
    radius = config.escape_scale * (1.0 + abs(lam))
    z = -lam / 2
    for step in range(1, max_iter + 1):
        z = lam * z + z * z
        if abs(z) > radius:
            return False, step
    return True, None


def _escape_row(lams: np.ndarray, max_iter: int, config: Tolerances) -> np.ndarray:
    radius = config.escape_scale * (1.0 + np.abs(lams))
    z = -lams / 2
    steps = np.zeros(lams.shape, dtype=np.int64)
    active = np.ones(lams.shape, dtype=bool)
    with np.errstate(all="ignore"):
        for step in range(1, max_iter + 1):
            z[active] = lams[active] * z[active] + z[active] ** 2
            escaped = active & (np.abs(z) > radius)
            steps[escaped] = step
            active &= ~escaped
            if not active.any():
                break
    return steps


def escape_steps(lams: np.ndarray, max_iter: int, config: Tolerances = DEFAULTS) -> np.ndarray:
    """Escape step of the critical orbit for every parameter of a 2D grid, 0 for members.

    Rows are processed in parallel and assembled by row index.
    """
    if max_iter < 1:
        raise DomainError(f"max_iter must be positive, got {max_iter}")
    lams = np.atleast_2d(np.asarray(lams, dtype=complex))
    rows = parallel_map(lambda row: _escape_row(row.copy(), max_iter, config), list(lams))
    return np.vstack(rows)


def yoccoz_disk_check(big_lambda) -> bool:
    """Whether Lambda lies in the closed disk of center and radius log 2."""
    value = big_lambda.value if isinstance(big_lambda, HalfPlanePoint) else complex(big_lambda)
    return abs(value - LOG2) <= LOG2 + 1e-9


def yoccoz_dynamical_disk(
    k: int, pq: IrreducibleRational, n: int, degree: int = 2
) -> Tuple[complex, float]:
    """Disk containing the preferred logarithm of the multiplier of a repelling k-periodic point.

    For a polynomial of degree ``degree`` with a repelling point of exact period k, combinatorial
    rotation number p/q and n cycles of external rays landing on it, the radius is
    r = k log(degree) / (n q) and the center r + 2 pi i p / q.

    Returns:
        the center and the radius of the disk.
    """
    if k < 1 or n < 1 or degree < 2:
        raise DomainError(f"Expected k, n >= 1 and degree >= 2, got {k}, {n}, {degree}")
    radius = k * np.log(degree) / (n * pq.q)
    return complex(radius, 2 * np.pi * pq.p / pq.q), float(radius)


def in_yoccoz_dynamical_disk(
    big_lambda: complex, k: int, pq: IrreducibleRational, n: int, degree: int = 2
) -> bool:
    """Whether ``big_lambda`` lies in the disk of ``yoccoz_dynamical_disk``."""
    center, radius = yoccoz_dynamical_disk(k, pq, n, degree)
    return abs(complex(big_lambda) - center) <= radius + 1e-9


def _max_pairwise(points: np.ndarray, metric) -> float:
    best = 0.0
    for start in range(0, len(points), PAIRWISE_CHUNK):
        block = points[start : start + PAIRWISE_CHUNK, None]
        best = max(best, float(np.max(metric(block, points[None, :]))))
    return best


def _wake_sector(rho: complex, rho_root: complex, q_inner: int, config: Tolerances) -> bool:
    half_angle = 2 * np.pi * config.wake_sector_factor / q_inner**2
    return abs(rho) > 1 and abs(cmath.phase(rho / rho_root)) <= half_angle


def sublimb_diameter(
    sublimb: SublimbId,
    resolution: int,
    max_iter: int,
    center: Optional[complex] = None,
    half_width: Optional[float] = None,
    config: Tolerances = DEFAULTS,
) -> Tuple[float, float]:
    """Euclidean and hyperbolic diameters of the scanned sublimb.

    The p'/q'-sublimb has a size of order 1 / q'^2 in the multiplier plane, so the scan covers
    a square window of half-width ``config.limb_window`` / (q'^2 |rho'|) around the sublimb root,
    rho' being the derivative of the multiplier map there, unless ``center`` and ``half_width``
    are given. The member pixels connected to the root pixel are collected by a breadth first
    fill in which the outer cycle is continued by Newton from pixel to pixel; a pixel is kept
    when its multiplier lies outside the unit disk within the wake sector of the root multiplier
    and the parameter lies outside the unit disk.

    Returns:
        the Euclidean diameter in lambda and the hyperbolic diameter of the Lambda-images.

    Raises:
        RootNotMember if the root pixel lies outside the window or escapes.
        LimbUnresolved if the fill does not leave the root pixel.
    """
    if resolution < 64:
        raise DomainError(f"resolution must be at least 64, got {resolution}")
    root = sublimb_root(sublimb, config)
    q_outer, q_inner = sublimb.outer.q, sublimb.inner.q
    center = root.lambda_ if center is None else complex(center)
    if half_width is None:
        slope = abs(multiplier_derivative(root, q_outer))
        half_width = config.limb_window / (q_inner**2 * slope)
    pixel = 2 * half_width / resolution
    offsets = (np.arange(resolution) - resolution // 2) * pixel
    lams = center + offsets[None, :] + 1j * offsets[::-1, None]

    root_j = int(round((root.lambda_.real - center.real) / pixel)) + resolution // 2
    root_i = resolution // 2 - int(round((root.lambda_.imag - center.imag) / pixel))
    if not (0 <= root_i < resolution and 0 <= root_j < resolution):
        raise RootNotMember(f"Root {root.lambda_} of {sublimb} is outside the window")
    steps = escape_steps(lams, max_iter, config)
    if steps[root_i, root_j] != 0:
        raise RootNotMember(
            f"Root pixel of {sublimb} escapes at step {steps[root_i, root_j]}, "
            f"resolution {resolution} is too coarse"
        )

    cycles: Dict[Tuple[int, int], complex] = {(root_i, root_j): root.cycle.points[0]}
    queue: Deque[Tuple[int, int]] = deque([(root_i, root_j)])
    while queue:
        i, j = queue.popleft()
        for di, dj in NEIGHBOURS:
            ni, nj = i + di, j + dj
            if not (0 <= ni < resolution and 0 <= nj < resolution) or (ni, nj) in cycles:
                continue
            lam = complex(lams[ni, nj])
            if steps[ni, nj] != 0 or abs(lam) <= 1:
                continue
            try:
                z = newton_periodic_point(lam, q_outer, cycles[(i, j)], config)
            except NumericalError:
                continue
            rho = cycle_from_point(lam, z, q_outer).multiplier
            if not _wake_sector(rho, root.rho, q_inner, config):
                continue
            cycles[(ni, nj)] = z
            queue.append((ni, nj))

    if len(cycles) == 1:
        raise LimbUnresolved(
            f"Sublimb {sublimb} covers the root pixel only, resolution {resolution} is too coarse "
            f"for the half-width {half_width:.3g}"
        )
    points = np.array([lams[index] for index in cycles], dtype=complex)
    euclid = _max_pairwise(points, lambda a, b: np.abs(a - b))
    images = log_power(points, q_outer)
    hyperbolic = _max_pairwise(images, dist_hr_array)
    L.info(
        "Sublimb %s: %d pixels, diameters %.4g (Euclidean) %.4g (hyperbolic)",
        sublimb,
        len(points),
        euclid,
        hyperbolic,
    )
    return euclid, hyperbolic
