"""
Conformal moduli of lattice parallelograms and the lattice quadruple search.

The quadrilateral Q(va, vb) is the parallelogram with corners 0, va, va + vb, vb whose a-sides
are parallel to va; its modulus is the extremal length of the curves joining the a-sides, so the
rectangle Q(1, 2i) has modulus 2. The modulus is computed as 1 / E where E is the Dirichlet
energy of the harmonic function equal to 0 on one a-side and 1 on the other, discretised by
bilinear finite elements on the unit square pulled back by the affine map (s, t) -> s va + t vb.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import cg, spsolve

from satellite_lab.config import DEFAULTS, Tolerances
from satellite_lab.exceptions import DegenerateParallelogram, DomainError, SearchExhausted
from satellite_lab.geometry.continued_fractions import (
    bezout_pair,
    convergents_of,
    simplest_between,
)
from satellite_lab.geometry.half_plane import TWO_PI_I, dist_hr, geodesic_endpoints, mobius_A

L = logging.getLogger(__name__)

GAUSS_POINTS = (0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0))
RATIONAL_GATE = 1e-12
HEIGHT_GATE = 1e-9
MAX_RATIONAL_DENOMINATOR = 10**4
MAX_BASIS_DENOMINATOR = 10**6
MAX_STRETCH_DOUBLINGS = 16

# (m, n, u, v) of the identity change of generators
IDENTITY_BASIS = (0, 1, 1, 0)


@dataclass(frozen=True)
class LatticeQuadruple:
    """Integers spanning the vectors q Lambda - p 2 pi i and s Lambda - r 2 pi i.

    ``case`` names the branch of the search that produced the quadruple and ``log_ratio`` the
    validated value of log(Mod(Q_1) / Mod(Q_2)).
    """

    p: int
    q: int
    r: int
    s: int
    case: str = ""
    log_ratio: float = float("nan")

    def vectors(self, big_lambda: complex) -> Tuple[complex, complex]:
        """The spanning vectors (q Lambda - p 2 pi i, s Lambda - r 2 pi i)."""
        return (
            self.q * big_lambda - self.p * TWO_PI_I,
            self.s * big_lambda - self.r * TWO_PI_I,
        )


def _element_stiffness(tensor: np.ndarray) -> np.ndarray:
    """Stiffness of a bilinear element of the unit grid for the constant tensor, 2x2 Gauss."""
    stiffness = np.zeros((4, 4))
    for xi in GAUSS_POINTS:
        for eta in GAUSS_POINTS:
            # local nodes (0, 0), (1, 0), (1, 1), (0, 1)
            gradients = np.array(
                [
                    [-(1 - eta), -(1 - xi)],
                    [1 - eta, -xi],
                    [eta, xi],
                    [-eta, 1 - xi],
                ]
            )
            stiffness += 0.25 * gradients @ tensor @ gradients.T
    return stiffness


def _stiffness_matrix(tensor: np.ndarray, grid: int) -> sparse.csr_matrix:
    side = grid + 1
    i, j = np.meshgrid(np.arange(grid), np.arange(grid), indexing="xy")
    corner = (j * side + i).ravel()
    nodes = np.stack([corner, corner + 1, corner + side + 1, corner + side], axis=1)
    local = _element_stiffness(tensor)
    rows = np.repeat(nodes, 4, axis=1).ravel()
    cols = np.tile(nodes, (1, 4)).ravel()
    values = np.tile(local.ravel(), len(nodes))
    return sparse.coo_matrix((values, (rows, cols)), shape=(side * side, side * side)).tocsr()


def _dirichlet_energy(tensor: np.ndarray, grid: int, config: Tolerances) -> float:
    side = grid + 1
    matrix = _stiffness_matrix(tensor, grid)
    t = np.repeat(np.arange(side) / grid, side)
    fixed = (t == 0) | (t == 1)
    free = ~fixed
    boundary = np.where(t == 1, 1.0, 0.0)
    system = matrix[free][:, free]
    rhs = -matrix[free][:, fixed] @ boundary[fixed]
    solution, info = cg(system, rhs, x0=t[free], rtol=config.cg_tol, maxiter=20 * side * side)
    if info != 0:
        L.debug("CG did not converge (info=%d) on grid %d, using a direct solve", info, grid)
        solution = spsolve(system.tocsc(), rhs)
    u = boundary.copy()
    u[free] = solution
    return float(u @ (matrix @ u))


def parallelogram_modulus(
    va: complex, vb: complex, grid: Optional[int] = None, config: Tolerances = DEFAULTS
) -> float:
    """Conformal modulus of Q(va, vb), with one Richardson step between grid and 2 grid.

    Args:
        va: spanning vector of the a-sides.
        vb: the other spanning vector.
        grid: number of elements per side, at least 32; defaults to ``config.modulus_grid``.
        config: numerical defaults.

    Raises:
        DegenerateParallelogram if va and vb are linearly dependent over the reals.
    """
    grid = config.modulus_grid if grid is None else grid
    if grid < 32:
        raise DomainError(f"grid must be at least 32, got {grid}")
    va, vb = complex(va), complex(vb)
    jacobian = np.array([[va.real, vb.real], [va.imag, vb.imag]])
    determinant = float(np.linalg.det(jacobian))
    if abs(determinant) <= 1e-12 * abs(va) * abs(vb):
        raise DegenerateParallelogram(f"{va} and {vb} are linearly dependent")
    metric = jacobian.T @ jacobian
    tensor = abs(determinant) * np.linalg.inv(metric)
    coarse = _dirichlet_energy(tensor, grid, config)
    fine = _dirichlet_energy(tensor, 2 * grid, config)
    energy = (4.0 * fine - coarse) / 3.0
    return 1.0 / energy


def approximate_modulus(va: complex, vb: complex) -> float:
    """Distance between the a-sides over their length, area / |va|^2."""
    return abs((va.conjugate() * vb).imag) / abs(va) ** 2


def _hat_candidates(
    hat_first: complex, hat_second: complex, stretch: bool, config: Tolerances
) -> Iterator[Tuple[str, Tuple[int, int], Tuple[int, int]]]:
    """Pairs of hat lattice vectors (c, d), meaning c Lambda_hat - d 2 pi i.

    Equal heights Im / 2 pi are approximated by their convergents, distinct heights by the
    fraction of smallest denominator between them. ``stretch`` enables the sheared transposed
    pairs used without a change of generators.
    """
    heights = (hat_first.imag / (2 * np.pi), hat_second.imag / (2 * np.pi))
    if abs(heights[0] - heights[1]) <= HEIGHT_GATE * (1 + abs(heights[0]) + abs(heights[1])):
        ratios = convergents_of(0.5 * sum(heights), config.convergent_depth).terms
    else:
        ratios = (simplest_between(*heights),)
    for a, b in ratios:
        if hat_first.real <= hat_second.real:
            yield "horizontal", (b, a), (0, 1)
        elif stretch:
            for doubling in range(MAX_STRETCH_DOUBLINGS):
                k = 2**doubling
                yield "transposed", (b, a + k * b), (b, a)
        else:
            yield "transposed", (0, 1), (b, a)


def _normalize(
    first: Tuple[int, int], second: Tuple[int, int]
) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    q, p = first
    s, r = second
    if q < 0 or (q == 0 and p < 0):
        q, p = -q, -p
    if s < 0 or (s == 0 and r < 0):
        s, r = -s, -r
    return (q, p), (s, r)


def _bases(first: complex, second: complex, config: Tolerances):
    """Changes of generators (case, m, n, u, v) to try, in the order of the construction."""
    if abs(first.imag - second.imag) <= RATIONAL_GATE * (1 + abs(first) + abs(second)):
        yield ("I",) + IDENTITY_BASIS
        return
    _, upper = geodesic_endpoints(first, second)
    y = upper / (2 * np.pi)
    terms = convergents_of(y, config.convergent_depth).terms
    for u, v in terms:
        if v <= MAX_RATIONAL_DENOMINATOR and abs(y - u / v) < RATIONAL_GATE:
            m, n = bezout_pair(u, v)
            yield "IIA", m, n, u, v
            return
    for (u, v), (m, n) in zip(terms, terms[1:]):
        if n > MAX_BASIS_DENOMINATOR:
            break
        if n * u - v * m == -1:
            m, n = -m, -n
        yield "IIB", m, n, u, v


def quadruple_search(
    first: complex, second: complex, eps: float, config: Tolerances = DEFAULTS
) -> LatticeQuadruple:
    """Find (p, q, r, s) whose quadrilaterals realise the distance of the tori up to eps.

    The quadrilaterals Q_j = Q(q Lambda_j - p 2 pi i, s Lambda_j - r 2 pi i) must satisfy
    log(Mod(Q_1) / Mod(Q_2)) >= dist_hr(Lambda_1, Lambda_2) - eps. When the imaginary parts are
    equal the candidates are built directly; otherwise the generators are changed by the Moebius
    map sending the upper endpoint of the geodesic through Lambda_1 and Lambda_2 to infinity,
    exactly when that endpoint is rational and through consecutive convergents otherwise.
    Candidates are screened with ``approximate_modulus`` and validated with
    ``parallelogram_modulus``.

    Raises:
        SearchExhausted if no candidate is validated within ``config.convergent_depth``.
    """
    first, second = complex(first), complex(second)
    if first == second:
        raise DomainError("The two points must differ")
    distance = dist_hr(first, second)
    target = distance - eps
    for case, m, n, u, v in _bases(first, second, config):
        try:
            hat_first = mobius_A(m, n, u, v, first)
            hat_second = mobius_A(m, n, u, v, second)
        except DomainError:
            continue
        for kind, (c1, d1), (c2, d2) in _hat_candidates(
            hat_first, hat_second, (m, n, u, v) == IDENTITY_BASIS, config
        ):
            (q, p), (s, r) = _normalize(
                (c1 * n + d1 * v, c1 * m + d1 * u), (c2 * n + d2 * v, c2 * m + d2 * u)
            )
            if q * r - p * s == 0:
                continue
            quadruple = LatticeQuadruple(p, q, r, s)
            va1, vb1 = quadruple.vectors(first)
            va2, vb2 = quadruple.vectors(second)
            screen = np.log(approximate_modulus(va1, vb1) / approximate_modulus(va2, vb2))
            if screen < target:
                continue
            log_ratio = float(
                np.log(
                    parallelogram_modulus(va1, vb1, config=config)
                    / parallelogram_modulus(va2, vb2, config=config)
                )
            )
            L.debug("Case %s %s candidate %s: log ratio %.6g", case, kind, quadruple, log_ratio)
            if log_ratio >= target:
                L.info(
                    "Quadruple %s (case %s) reaches %.6g against distance %.6g",
                    (p, q, r, s),
                    case,
                    log_ratio,
                    distance,
                )
                return LatticeQuadruple(p, q, r, s, case=f"{case}-{kind}", log_ratio=log_ratio)
    raise SearchExhausted(
        f"No lattice quadruple within eps={eps} of the distance {distance:.6g} between "
        f"{first} and {second}"
    )
