"""
Raster images of the connectedness locus of the logistic family, in the lambda plane or in the
rescaled Lambda plane of a satellite.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from scipy import ndimage

from satellite_lab.config import DEFAULTS, Tolerances
from satellite_lab.exceptions import DomainError
from satellite_lab.parameters.limbs import escape_steps
from satellite_lab.parameters.multiplier import component_center, log_power
from satellite_lab.utils import IrreducibleRational

L = logging.getLogger(__name__)

MEMBER_COLOR = (0, 0, 0)
OTHER_MEMBER_COLOR = (64, 64, 64)
PPM_MAGIC = b"P6"


class Plane(enum.Enum):
    """Coordinate plane of a viewport."""

    LAMBDA_SMALL = "lambda"
    LAMBDA_BIG = "Lambda"


@dataclass(frozen=True)
class Viewport:
    """Rectangle of the plane sampled at the centers of px_w x px_h pixels, first row on top."""

    center: complex
    half_width: float
    half_height: float
    px_w: int
    px_h: int
    plane: Plane = Plane.LAMBDA_SMALL

    def __post_init__(self):
        if self.px_w < 1 or self.px_h < 1:
            raise DomainError(f"Viewport needs at least one pixel, got {self.px_w}x{self.px_h}")
        if not (self.half_width > 0 and self.half_height > 0):
            raise DomainError("Viewport half sizes must be positive")

    @property
    def pixel_size(self) -> complex:
        """Pixel width as real part and pixel height as imaginary part."""
        return complex(2 * self.half_width / self.px_w, 2 * self.half_height / self.px_h)

    def grid(self) -> np.ndarray:
        """Coordinates of the pixel centers, shape (px_h, px_w)."""
        size = self.pixel_size
        x = self.center.real - self.half_width + (np.arange(self.px_w) + 0.5) * size.real
        y = self.center.imag + self.half_height - (np.arange(self.px_h) + 0.5) * size.imag
        return x[None, :] + 1j * y[:, None]

    def pixel_of(self, point: complex) -> Optional[tuple]:
        """Row and column of the pixel containing ``point``, None outside the viewport."""
        size = self.pixel_size
        column = int(np.floor((point.real - self.center.real + self.half_width) / size.real))
        row = int(np.floor((self.center.imag + self.half_height - point.imag) / size.imag))
        if 0 <= row < self.px_h and 0 <= column < self.px_w:
            return row, column
        return None


@dataclass(frozen=True)
class RasterImage:
    """Row-major RGB image."""

    width: int
    height: int
    pixels: bytes

    def __post_init__(self):
        if len(self.pixels) != self.width * self.height * 3:
            raise DomainError(
                f"Expected {self.width * self.height * 3} bytes, got {len(self.pixels)}"
            )

    def to_array(self) -> np.ndarray:
        """The pixels as a (height, width, 3) uint8 array."""
        return np.frombuffer(self.pixels, dtype=np.uint8).reshape(self.height, self.width, 3)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "RasterImage":
        """Build an image from a (height, width, 3) array."""
        array = np.ascontiguousarray(array, dtype=np.uint8)
        return cls(width=array.shape[1], height=array.shape[0], pixels=array.tobytes())


def parameters_of(view: Viewport, pq: Optional[IrreducibleRational]) -> np.ndarray:
    """The lambda parameters of the pixel centers of ``view``.

    In the Lambda plane the branch lambda = omega_{p/q} exp(Lambda / q) is used.
    """
    grid = view.grid()
    if view.plane is Plane.LAMBDA_SMALL:
        return grid
    if pq is None:
        raise DomainError("A rotation number is required to render the Lambda plane")
    return pq.omega * np.exp(grid / pq.q)


def gray_levels(steps: np.ndarray, max_iter: int) -> np.ndarray:
    """Gray level 1 + floor(254 (1 - log(1 + k) / log(1 + max_iter))) of the escape step k."""
    shade = 1 + np.floor(254 * (1 - np.log1p(steps) / np.log1p(max_iter)))
    return np.clip(shade, 1, 255).astype(np.uint8)


def _satellite_members(
    view: Viewport, pq: IrreducibleRational, members: np.ndarray, config: Tolerances
) -> np.ndarray:
    """Members lying in the connected piece of the right half-plane holding the center image."""
    mask = members & (view.grid().real > 0)
    labels, count = ndimage.label(mask)
    anchor = view.pixel_of(complex(log_power(component_center(pq, config), pq.q)))
    if anchor is None or labels[anchor] == 0:
        L.warning("The center of H_%s is not a member pixel of the viewport", pq)
        return mask
    L.debug("Kept component %d of %d in the Lambda plane", labels[anchor], count)
    return labels == labels[anchor]


def render_locus(
    view: Viewport,
    pq: Optional[IrreducibleRational],
    max_iter: int,
    config: Tolerances = DEFAULTS,
) -> RasterImage:
    """Render the connectedness locus: members in black, escaping parameters in gray.

    In the Lambda plane only the members connected to the image of the center of H_{p/q}
    within the right half-plane are black; the other members are dark gray.
    """
    steps = escape_steps(parameters_of(view, pq), max_iter, config)
    members = steps == 0
    image = np.empty((view.px_h, view.px_w, 3), dtype=np.uint8)
    image[...] = gray_levels(steps, max_iter)[..., None]
    if view.plane is Plane.LAMBDA_BIG:
        kept = _satellite_members(view, pq, members, config)
        image[members & ~kept] = OTHER_MEMBER_COLOR
        image[kept] = MEMBER_COLOR
    else:
        image[members] = MEMBER_COLOR
    L.info("Rendered %dx%d pixels, %d members", view.px_w, view.px_h, int(members.sum()))
    return RasterImage.from_array(image)


def encode_ppm(image: RasterImage) -> bytes:
    """Binary PPM (P6) encoding."""
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels


def decode_ppm(data: bytes) -> RasterImage:
    """Decode a binary PPM written by ``encode_ppm``.

    Raises:
        DomainError if the header is not a P6 header with maxval 255.
    """
    fields = data.split(b"\n", 3)
    if len(fields) != 4 or fields[0] != PPM_MAGIC or fields[2] != b"255":
        raise DomainError("Not a binary PPM with maxval 255")
    try:
        width, height = (int(value) for value in fields[1].split())
    except ValueError as error:
        raise DomainError(f"Invalid PPM size {fields[1]!r}") from error
    return RasterImage(width=width, height=height, pixels=fields[3])


def membership_csv(
    view: Viewport,
    pq: Optional[IrreducibleRational],
    max_iter: int,
    config: Tolerances = DEFAULTS,
) -> pd.DataFrame:
    """Per-pixel membership table with columns row, column, re, im, member and escape_step."""
    grid = view.grid()
    steps = escape_steps(parameters_of(view, pq), max_iter, config)
    rows, columns = np.indices(grid.shape)
    return pd.DataFrame(
        {
            "row": rows.ravel(),
            "column": columns.ravel(),
            "re": grid.real.ravel(),
            "im": grid.imag.ravel(),
            "member": (steps == 0).ravel(),
            "escape_step": steps.ravel(),
        }
    )
