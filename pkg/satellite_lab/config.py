"""
Numerical defaults of satellite_lab.

All tolerances, iteration caps and experiment grids live in this single block. Functions take
a ``Tolerances`` instance by value (default ``DEFAULTS``); use ``dataclasses.replace`` to
override individual fields, as the command line does.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class Tolerances:  # pylint: disable=too-many-instance-attributes
    """Tolerances and caps of the numerical kernels.

    Attributes:
        tol_orbit: a point z is periodic when |P^n(z) - z| < tol_orbit.
        newton_step_tol: relative Newton step size, |step| < newton_step_tol * (1 + |z|).
        newton_residual_tol: absolute Newton residual.
        max_newton_steps: Newton iteration cap.
        divisor_tol: a proper divisor d rejects a period-n candidate if |P^d(z) - z| < divisor_tol.
        quad_tol: trapezoid gate, |I_2N - I_N| < quad_tol * max(1, integrand scale).
        quad_n_min: initial number of nodes.
        quad_n_max: maximal number of nodes.
        contour_safety: minimum of |F(w) - w| on an admissible circle.
        fixed_point_radii: descending radius ladder for fixed point invariants.
        buff_radii: descending radius ladder for the Buff form circulation.
        rounding_gate: maximal distance of a multiplicity integral to an integer.
        continuation_initial_step: first step (fraction of the path) of a continuation.
        continuation_min_step: smallest step before giving up.
        continuation_max_jump: maximal displacement of a tracked cycle point per step.
        augmented_residual_tol: residual of the (lambda, z) Newton system.
        augmented_stall_tol: residual accepted when the augmented Newton step stalls at roundoff.
        escape_scale: escape radius is escape_scale * (1 + |lambda|).
        yoccoz_constant: constant C of the Yoccoz bound C / q' on sublimb diameters.
        limb_window: half-width of the sublimb scan window, limb_window / (q'^2 |rho'(root)|).
        wake_sector_factor: half-angle of the wake sector is 2 pi * factor / q'^2.
        max_q: largest denominator handled in double precision.
        convergent_depth: depth cap of the continued fraction searches.
        modulus_grid: base grid of the quadrilateral modulus solver.
        cg_tol: relative residual of the conjugate gradient solver.
    """

    tol_orbit: float = 1e-10
    newton_step_tol: float = 1e-13
    newton_residual_tol: float = 1e-13
    max_newton_steps: int = 200
    divisor_tol: float = 1e-8
    quad_tol: float = 1e-10
    quad_n_min: int = 64
    quad_n_max: int = 2**20
    contour_safety: float = 1e-6
    fixed_point_radii: Tuple[float, ...] = tuple(0.4 * 2 ** (-k / 2) for k in range(12))
    buff_radii: Tuple[float, ...] = tuple(0.8 * 2 ** (-k / 2) for k in range(14))
    rounding_gate: float = 0.01
    continuation_initial_step: float = 0.05
    continuation_min_step: float = 1e-8
    continuation_max_jump: float = 0.1
    augmented_residual_tol: float = 1e-12
    augmented_stall_tol: float = 1e-9
    escape_scale: float = 2.0
    yoccoz_constant: float = 6.0
    limb_window: float = 8.0
    wake_sector_factor: float = 1.0
    max_q: int = 7
    convergent_depth: int = 40
    modulus_grid: int = 64
    cg_tol: float = 1e-10


@dataclass(frozen=True)
class ExperimentDefaults:
    """Default grids of the experiments run from the command line."""

    fit_t_min: float = 1e-4
    fit_t_max: float = 1e-2
    fit_points: int = 12
    diverge_t_min: float = 1e-6
    diverge_t_max: float = 1e-2
    diverge_points: int = 40
    n_min: int = 2
    n_max: int = 8
    corollary_n_max: int = 32
    limb_resolution: int = 512
    max_iter: int = 2000
    render_size: int = 512


DEFAULTS = Tolerances()
EXPERIMENTS = ExperimentDefaults()
