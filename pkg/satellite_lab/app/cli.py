"""The satellite-lab command line launcher"""
from __future__ import annotations

import logging
import sys
from dataclasses import replace

import click
import numpy as np
from atlas_commons.app_utils import log_args, set_verbose, verbose_option

from satellite_lab.app.report import emit_report
from satellite_lab.asymptotics import divergence, expansion
from satellite_lab.config import DEFAULTS, EXPERIMENTS, Tolerances
from satellite_lab.dynamics.logistic import critical_orbit_in_lambda, find_misiurewicz
from satellite_lab.exceptions import DomainError, NumericalError, ValidationFailure
from satellite_lab.geometry.half_plane import teichmuller_lower_bound
from satellite_lab.geometry.quadrilateral import quadruple_search
from satellite_lab.parameters.limbs import yoccoz_disk_check
from satellite_lab.render import raster
from satellite_lab.utils import log_grid, parse_rational
from satellite_lab.version import VERSION as __version__

L = logging.getLogger(__name__)
logging.basicConfig(level=logging.INFO)

EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_USAGE = 64

CHECKS = {
    "residue": "Re(Res_{p/q}) >= 1, and >= 1/(2 log 2) + q/4 for q >= 2 (Buff-Epstein bound)",
    "expand": "Lambda(P) = -P/q - Res_{p/q} (P/q)^2 + O((P/q)^3) on rho = exp(i t)",
    "diverge": "d(Lambda(rho), M(rho)) >= 2 log(|Q - q| / t) - O(1), increasing as t -> 0",
    "limbs": "roots of the (n^2-1)/n^3 sublimbs lie in the disk |Lambda - log 2| <= log 2, "
    "hyperbolic diameters are O(1/n)",
    "corollary": "distances between corresponding small sublimb roots diverge when q != Q",
    "tori": "log K of the affine stretch equals the hyperbolic distance of the marked tori",
    "render": "the Lambda-image of the p/q satellite limb lies in |Lambda - log 2| <= log 2",
    "misiurewicz": "the critical value lands on the fixed point 0 after exactly q m iterations",
}


class NaturalOrderGroup(click.Group):
    """Click group preserving the order of commands and mapping errors to exit codes."""

    def list_commands(self, ctx: click.Context):
        """Return the list of possible commands."""
        return list(self.commands)

    def main(self, *args, **kwargs):  # pylint: disable=arguments-differ
        """Run the group; exit 1 on a violated bound, 2 on a numerical failure, 64 on misuse."""
        kwargs["standalone_mode"] = False
        try:
            result = super().main(*args, **kwargs)
        except click.UsageError as error:
            error.show()
            sys.exit(EXIT_USAGE)
        except DomainError as error:
            click.echo(f"Error: {error}", err=True)
            sys.exit(EXIT_USAGE)
        except ValidationFailure as error:
            click.echo(f"Validation failed: {error}", err=True)
            sys.exit(EXIT_VALIDATION)
        except NumericalError as error:
            click.echo(f"Numerical failure: {error}", err=True)
            sys.exit(EXIT_NUMERICAL)
        except click.ClickException as error:
            error.show()
            sys.exit(error.exit_code)
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        if isinstance(result, int):
            sys.exit(result)
        return result


class RationalType(click.ParamType):
    """A rotation number "p/q", reduced to lowest terms."""

    name = "p/q"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            rational, changed = parse_rational(value)
        except DomainError as error:
            self.fail(str(error), param, ctx)
        if changed:
            click.echo(f"Note: {value} reduced to {rational}")
        return rational


class ComplexType(click.ParamType):
    """A complex number such as "1+2j" or "0.5-1i"."""

    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return complex(str(value).replace(" ", "").replace("i", "j"))
        except ValueError:
            self.fail(f"{value!r} is not a complex number", param, ctx)
        return None


RATIONAL = RationalType()
COMPLEX = ComplexType()


def _list_checks(ctx: click.Context, _, value: bool):
    if not value or ctx.resilient_parsing:
        return
    for command, statement in CHECKS.items():
        click.echo(f"{command}: {statement}")
    ctx.exit()


def tolerance_options(func):
    """Add the --tol-orbit and --quad-tol overrides of the numerical defaults."""
    func = click.option(
        "--quad-tol",
        type=float,
        default=DEFAULTS.quad_tol,
        show_default=True,
        help="Convergence gate of the trapezoid rule",
    )(func)
    func = click.option(
        "--tol-orbit",
        type=float,
        default=DEFAULTS.tol_orbit,
        show_default=True,
        help="Residual below which a point is periodic",
    )(func)
    return func


def _config(tol_orbit: float, quad_tol: float) -> Tolerances:
    return replace(DEFAULTS, tol_orbit=tol_orbit, quad_tol=quad_tol)


def _summary(command: str, text: str) -> None:
    click.echo(f"{command}: {text}")


@click.group(cls=NaturalOrderGroup)
@click.version_option(__version__)
@click.option(
    "--list-checks",
    is_flag=True,
    is_eager=True,
    expose_value=False,
    callback=_list_checks,
    help="List the statement checked by every command and exit.",
)
def cli():
    """The CLI entry point."""


@cli.command()
@verbose_option
@tolerance_options
@click.option("--pq", type=RATIONAL, required=True, help="Rotation number p/q")
@click.option("--tmin", type=float, default=EXPERIMENTS.fit_t_min, show_default=True)
@click.option("--tmax", type=float, default=EXPERIMENTS.fit_t_max, show_default=True)
@click.option("--points", type=int, default=EXPERIMENTS.fit_points, show_default=True)
@click.option("--output", default="residue.json", show_default=True, help="Report path")
@log_args(L)
def residue(  # pylint: disable=too-many-arguments
    verbose, tol_orbit, quad_tol, pq, tmin, tmax, points, output
):
    """Compute Res_{p/q} from the Buff form and from the expansion of Lambda."""
    set_verbose(L, verbose)
    config = _config(tol_orbit, quad_tol)
    report = expansion.residue_fit(pq, log_grid(tmin, tmax, points), config)
    emit_report([report], "residue", output)
    _summary("residue", f"Res_{pq} = {report.res_contour:.12g}, fit {report.res_fit:.12g}")
    bound = 1.0 if pq.q == 1 else 1 / (2 * np.log(2)) + pq.q / 4
    if report.res_contour.real < bound - 1e-6:
        raise ValidationFailure(f"Re(Res_{pq}) = {report.res_contour.real} is below {bound}")


@cli.command()
@verbose_option
@tolerance_options
@click.option("--pq", type=RATIONAL, required=True, help="Rotation number p/q")
@click.option("--tmin", type=float, default=EXPERIMENTS.fit_t_min, show_default=True)
@click.option("--tmax", type=float, default=EXPERIMENTS.fit_t_max, show_default=True)
@click.option("--points", type=int, default=EXPERIMENTS.fit_points, show_default=True)
@click.option("--output", default="expansion.csv", show_default=True, help="Report path")
@log_args(L)
def expand(  # pylint: disable=too-many-arguments
    verbose, tol_orbit, quad_tol, pq, tmin, tmax, points, output
):
    """Compare Lambda(exp(i t)) with its second order expansion."""
    set_verbose(L, verbose)
    config = _config(tol_orbit, quad_tol)
    res = expansion.residue_contour(pq, config)
    rows = []
    for t in log_grid(tmin, tmax, points):
        value = expansion.lambda_of_t(pq, t, config).value
        x = 1j * t / pq.q
        predicted = -x - res * x * x
        rows.append(
            {
                "t": float(t),
                "Lambda_re": value.real,
                "Lambda_im": value.imag,
                "predicted_re": predicted.real,
                "predicted_im": predicted.imag,
                "error": abs(value - predicted),
            }
        )
    emit_report(rows, "expansion", output)
    worst = max(row["error"] / (row["t"] / pq.q) ** 2 for row in rows)
    _summary("expand", f"{len(rows)} points, max error / (t/q)^2 = {worst:.3e}")


@cli.command()
@verbose_option
@tolerance_options
@click.option("--pq", type=RATIONAL, required=True, help="Rotation number p/q")
@click.option("--PQ", "big_pq", type=RATIONAL, required=True, help="Rotation number P/Q")
@click.option("--tmin", type=float, default=EXPERIMENTS.diverge_t_min, show_default=True)
@click.option("--tmax", type=float, default=EXPERIMENTS.diverge_t_max, show_default=True)
@click.option("--points", type=int, default=EXPERIMENTS.diverge_points, show_default=True)
@click.option("--output", default="divergence.csv", show_default=True, help="Report path")
@log_args(L)
def diverge(  # pylint: disable=too-many-arguments
    verbose, tol_orbit, quad_tol, pq, big_pq, tmin, tmax, points, output
):
    """Hyperbolic distance between Lambda(exp(i t)) and M(exp(i t)) as t decreases."""
    set_verbose(L, verbose)
    config = _config(tol_orbit, quad_tol)
    records = divergence.divergence_scan(pq, big_pq, log_grid(tmin, tmax, points), config)
    emit_report(records, "divergence", output)
    _summary("diverge", f"{len(records)} points, last distance {records[-1].dist:.6g}")
    if pq.q != big_pq.q:
        tail = [record.dist for record in records if record.t <= 1e-3]
        if any(later <= earlier for earlier, later in zip(tail, tail[1:])):
            raise ValidationFailure("The distance does not increase on the tail t <= 1e-3")


@cli.command()
@verbose_option
@tolerance_options
@click.option("--pq", type=RATIONAL, required=True, help="Rotation number p/q")
@click.option("--nmin", type=int, default=EXPERIMENTS.n_min, show_default=True)
@click.option("--nmax", type=int, default=EXPERIMENTS.n_max, show_default=True)
@click.option("--resolution", type=int, default=EXPERIMENTS.limb_resolution, show_default=True)
@click.option("--max-iter", type=int, default=EXPERIMENTS.max_iter, show_default=True)
@click.option("--output", default="limbs.csv", show_default=True, help="Report path")
@log_args(L)
def limbs(  # pylint: disable=too-many-arguments
    verbose, tol_orbit, quad_tol, pq, nmin, nmax, resolution, max_iter, output
):
    """Roots and diameters of the (n^2-1)/n^3 sublimbs of the p/q satellite."""
    set_verbose(L, verbose)
    config = _config(tol_orbit, quad_tol)
    records = divergence.small_limb_scan(
        pq, range(nmin, nmax + 1), resolution, max_iter, config
    )
    emit_report(records, "limbs", output)
    _summary("limbs", f"{len(records)} sublimbs of {pq}")
    outside = [record.n for record in records if not yoccoz_disk_check(record.root_lambda)]
    if outside:
        raise ValidationFailure(f"Sublimb roots outside the Yoccoz disk for n in {outside}")
    too_large = [
        record.n
        for record in records
        if record.euclid_diam > config.yoccoz_constant / record.n**3
    ]
    if too_large:
        raise ValidationFailure(f"Sublimbs above the Yoccoz bound C / q' for n in {too_large}")


@cli.command()
@verbose_option
@tolerance_options
@click.option("--pq", type=RATIONAL, required=True, help="Rotation number p/q")
@click.option("--PQ", "big_pq", type=RATIONAL, required=True, help="Rotation number P/Q")
@click.option("--nmin", type=int, default=EXPERIMENTS.n_min, show_default=True)
@click.option("--nmax", type=int, default=EXPERIMENTS.corollary_n_max, show_default=True)
@click.option("--witnesses/--no-witnesses", default=False, show_default=True)
@click.option("--output", default="corollary.csv", show_default=True, help="Report path")
@log_args(L)
def corollary(  # pylint: disable=too-many-arguments
    verbose, tol_orbit, quad_tol, pq, big_pq, nmin, nmax, witnesses, output
):
    """Distances between corresponding small sublimb roots of p/q and P/Q."""
    set_verbose(L, verbose)
    config = _config(tol_orbit, quad_tol)
    records = divergence.corollary_check(
        pq, big_pq, range(nmin, nmax + 1), with_witnesses=witnesses, config=config
    )
    emit_report(records, "corollary", output)
    distances = [record.dist for record in records]
    _summary(
        "corollary",
        f"{len(records)} root pairs, distance {distances[0]:.4g} to {distances[-1]:.4g} "
        f"(increase {distances[-1] - distances[0]:.4g})",
    )
    if pq.q != big_pq.q and any(b <= a for a, b in zip(distances, distances[1:])):
        raise ValidationFailure("The distances between sublimb roots do not increase")


@cli.command()
@verbose_option
@tolerance_options
@click.option("--lambda1", type=COMPLEX, required=True, help="First marked torus")
@click.option("--lambda2", type=COMPLEX, required=True, help="Second marked torus")
@click.option("--eps", type=float, default=0.1, show_default=True)
@click.option("--search/--no-search", default=True, show_default=True)
@click.option("--output", default="tori.json", show_default=True, help="Report path")
@log_args(L)
def tori(  # pylint: disable=too-many-arguments
    verbose, tol_orbit, quad_tol, lambda1, lambda2, eps, search, output
):
    """Teichmueller distance of two marked tori and a lattice quadruple realising it."""
    set_verbose(L, verbose)
    config = _config(tol_orbit, quad_tol)
    distance, stretch = teichmuller_lower_bound(lambda1, lambda2)
    row = {
        "Lambda1_re": lambda1.real,
        "Lambda1_im": lambda1.imag,
        "Lambda2_re": lambda2.real,
        "Lambda2_im": lambda2.imag,
        "dist": distance,
        "log_K": stretch.log_dilatation,
        "mu_re": stretch.mu.real,
        "mu_im": stretch.mu.imag,
        "p": None,
        "q": None,
        "r": None,
        "s": None,
        "case": None,
        "log_ratio": float("nan"),
    }
    if search and lambda1 != lambda2:
        quadruple = quadruple_search(lambda1, lambda2, eps, config)
        row.update(
            p=quadruple.p,
            q=quadruple.q,
            r=quadruple.r,
            s=quadruple.s,
            case=quadruple.case,
            log_ratio=quadruple.log_ratio,
        )
    emit_report([row], "tori", output)
    _summary("tori", f"distance {distance:.12g}, log K {stretch.log_dilatation:.12g}")
    if abs(stretch.log_dilatation - distance) > 1e-10 * max(1.0, distance):
        raise ValidationFailure(f"log K = {stretch.log_dilatation} differs from {distance}")


@cli.command()
@verbose_option
@tolerance_options
@click.option("--pq", type=RATIONAL, default=None, help="Rotation number of the Lambda plane")
@click.option(
    "--plane",
    type=click.Choice([plane.value for plane in raster.Plane]),
    default=raster.Plane.LAMBDA_SMALL.value,
    show_default=True,
)
@click.option("--center", type=COMPLEX, default=None, help="Center of the viewport")
@click.option("--half-width", type=float, default=None)
@click.option("--half-height", type=float, default=None)
@click.option("--width", type=int, default=EXPERIMENTS.render_size, show_default=True)
@click.option("--height", type=int, default=EXPERIMENTS.render_size, show_default=True)
@click.option("--max-iter", type=int, default=EXPERIMENTS.max_iter, show_default=True)
@click.option("--output", default="locus.ppm", show_default=True, help="Path of the PPM image")
@click.option("--membership-path", default=None, help="Optional CSV of per-pixel membership")
@log_args(L)
def render(  # pylint: disable=too-many-arguments,too-many-locals
    verbose,
    tol_orbit,
    quad_tol,
    pq,
    plane,
    center,
    half_width,
    half_height,
    width,
    height,
    max_iter,
    output,
    membership_path,
):
    """Render the connectedness locus in the lambda plane or in the Lambda plane of p/q."""
    set_verbose(L, verbose)
    config = _config(tol_orbit, quad_tol)
    plane = raster.Plane(plane)
    if plane is raster.Plane.LAMBDA_BIG and pq is None:
        raise click.UsageError("--pq is required in the Lambda plane")
    default_center, default_half = (
        (complex(np.log(2)), 1.05 * np.log(2)) if plane is raster.Plane.LAMBDA_BIG else (0j, 2.5)
    )
    view = raster.Viewport(
        center=default_center if center is None else center,
        half_width=default_half if half_width is None else half_width,
        half_height=default_half if half_height is None else half_height,
        px_w=width,
        px_h=height,
        plane=plane,
    )
    image = raster.render_locus(view, pq, max_iter, config)
    with open(output, "wb") as out:
        out.write(raster.encode_ppm(image))
    if membership_path is not None:
        raster.membership_csv(view, pq, max_iter, config).to_csv(membership_path, index=False)
    _summary("render", f"{width}x{height} image written to {output}")
    if plane is raster.Plane.LAMBDA_BIG:
        _check_yoccoz_containment(view, image)


def _check_yoccoz_containment(view: raster.Viewport, image: raster.RasterImage) -> None:
    black = np.all(image.to_array() == 0, axis=2)
    diagonal = abs(view.pixel_size)
    distances = np.abs(view.grid()[black] - np.log(2))
    if distances.size and distances.max() > np.log(2) + diagonal:
        raise ValidationFailure(
            f"Member pixels up to {distances.max() - np.log(2):.4g} outside the Yoccoz disk"
        )


@cli.command()
@verbose_option
@tolerance_options
@click.option("--pq", type=RATIONAL, required=True, help="Rotation number p/q")
@click.option("--m", "depth", type=int, default=1, show_default=True, help="Number of returns")
@click.option("--seed", type=COMPLEX, required=True, help="Newton seed in lambda")
@click.option("--output", default="misiurewicz.json", show_default=True, help="Report path")
@log_args(L)
def misiurewicz(  # pylint: disable=too-many-arguments
    verbose, tol_orbit, quad_tol, pq, depth, seed, output
):
    """Parameter whose critical value lands on 0 after q m iterations."""
    set_verbose(L, verbose)
    config = _config(tol_orbit, quad_tol)
    lam = find_misiurewicz(pq, depth, seed, config)
    z, _ = critical_orbit_in_lambda(lam, pq.q * depth)
    emit_report(
        [
            {
                "pq": str(pq),
                "m": depth,
                "lambda_re": lam.real,
                "lambda_im": lam.imag,
                "residual": abs(z),
            }
        ],
        "misiurewicz",
        output,
    )
    _summary("misiurewicz", f"lambda = {lam:.15g}, residual {abs(z):.3e}")
