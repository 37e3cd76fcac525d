"""
Hyperbolic geometry of the right half-plane and Teichmueller geometry of marked tori.

The metric is |dz| / Re z (curvature -1). A marked torus is C / (Lambda Z + 2 pi i Z), generated
by Lambda in the right half-plane and -2 pi i; its Teichmueller distance to another marked torus
is realised by the real-affine stretch fixing -2 pi i.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from satellite_lab.exceptions import DomainError, OutOfDomain, PoleHit

L = logging.getLogger(__name__)

TWO_PI_I = 2j * np.pi


def _check_right_half_plane(*points: complex) -> None:
    for point in points:
        if not complex(point).real > 0:
            raise OutOfDomain(f"{point} is not in the right half-plane")


def dist_hr(z: complex, w: complex) -> float:
    """Hyperbolic distance arccosh(1 + |z - w|^2 / (2 Re z Re w)) in the right half-plane.

    Evaluated as 2 asinh(|z - w| / (2 sqrt(Re z Re w))), which keeps full relative accuracy
    for nearby points.

    Raises:
        OutOfDomain if z or w has a non positive real part.
    """
    _check_right_half_plane(z, w)
    z, w = complex(z), complex(w)
    return float(2.0 * np.arcsinh(abs(z - w) / (2.0 * np.sqrt(z.real * w.real))))


def dist_hr_array(z, w) -> np.ndarray:
    """Broadcasting version of ``dist_hr`` for numpy arrays of points."""
    z, w = np.asarray(z, dtype=complex), np.asarray(w, dtype=complex)
    if np.any(z.real <= 0) or np.any(w.real <= 0):
        raise OutOfDomain("Points outside the right half-plane")
    return 2.0 * np.arcsinh(np.abs(z - w) / (2.0 * np.sqrt(z.real * w.real)))


@dataclass(frozen=True)
class MarkedTorus:
    """The torus C / (Lambda Z - 2 pi i Z) with marked generators Lambda and -2 pi i."""

    big_lambda: complex

    def __post_init__(self):
        _check_right_half_plane(self.big_lambda)

    def lattice_point(self, m: int, n: int) -> complex:
        """The lattice vector m Lambda - n 2 pi i."""
        return m * self.big_lambda - n * TWO_PI_I


@dataclass(frozen=True)
class AffineStretch:
    """The real-affine map z -> a z + b conj(z) with Beltrami coefficient mu and dilatation K."""

    a: complex
    b: complex
    K: float
    mu: complex

    def __call__(self, z):
        return self.a * z + self.b * np.conj(z)

    @property
    def log_dilatation(self) -> float:
        """log K, computed as 2 atanh |mu|."""
        return float(2.0 * np.arctanh(abs(self.mu)))


def affine_between_tori(first: MarkedTorus, second: MarkedTorus) -> AffineStretch:
    """The real-affine map fixing 0 and -2 pi i that sends Lambda_1 to Lambda_2.

    Solving a - b = 1 and a Lambda_1 + b conj(Lambda_1) = Lambda_2 gives
    b = (Lambda_2 - Lambda_1) / (2 Re Lambda_1) and a = 1 + b. The dilatation K satisfies
    log K = dist_hr(Lambda_1, Lambda_2).
    """
    l1, l2 = complex(first.big_lambda), complex(second.big_lambda)
    b = (l2 - l1) / (2.0 * l1.real)
    a = (l2 + l1.conjugate()) / (2.0 * l1.real)
    mu = b / a
    if not abs(mu) < 1:
        raise DomainError(f"Affine map from {l1} to {l2} does not preserve orientation")
    K = (1.0 + abs(mu)) / (1.0 - abs(mu))
    return AffineStretch(a=a, b=b, K=K, mu=mu)


def teichmuller_lower_bound(
    first: complex, second: complex
) -> Tuple[float, AffineStretch]:
    """Lower bound on the log-dilatation of any marking preserving map between two tori.

    Returns:
        dist_hr(Lambda_1, Lambda_2) and the extremal affine stretch realising it.
    """
    stretch = affine_between_tori(MarkedTorus(complex(first)), MarkedTorus(complex(second)))
    distance = dist_hr(first, second)
    L.debug("Teichmueller distance %.6g, log K %.6g", distance, stretch.log_dilatation)
    return distance, stretch


def mobius_A(m: int, n: int, u: int, v: int, z: complex) -> complex:
    """Evaluate -2 pi i (n z - m 2 pi i) / (v z - u 2 pi i), an isometry of the half-plane.

    Raises:
        DomainError if n u - v m != 1.
        PoleHit if v z = u 2 pi i.
    """
    if n * u - v * m != 1:
        raise DomainError(f"Expected n u - v m = 1, got {n * u - v * m} for {(m, n, u, v)}")
    z = complex(z)
    denominator = v * z - u * TWO_PI_I
    if abs(denominator) <= 1e-14 * (1.0 + abs(v * z)):
        raise PoleHit(f"{z} is the pole of the Moebius map {(m, n, u, v)}")
    return complex(-TWO_PI_I * (n * z - m * TWO_PI_I) / denominator)


def geodesic_endpoints(z: complex, w: complex) -> Tuple[float, float]:
    """Imaginary parts (y_low, y_high) of the endpoints of the geodesic through z and w.

    Geodesics are half circles centered on the imaginary axis; z and w must have distinct
    imaginary parts.
    """
    _check_right_half_plane(z, w)
    z, w = complex(z), complex(w)
    if z.imag == w.imag:
        raise DomainError(f"{z} and {w} lie on a horizontal geodesic")
    center = (abs(z) ** 2 - abs(w) ** 2) / (2.0 * (z.imag - w.imag))
    radius = float(np.hypot(z.real, z.imag - center))
    return center - radius, center + radius
