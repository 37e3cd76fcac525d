"""Unit tests for the raster images of the connectedness locus"""
import numpy as np
import numpy.testing as npt
import pytest

import satellite_lab.render.raster as tested
from satellite_lab.exceptions import DomainError


def test_viewport_grid():
    view = tested.Viewport(center=1j, half_width=2, half_height=1, px_w=4, px_h=2)
    grid = view.grid()
    assert grid.shape == (2, 4)
    npt.assert_allclose(grid[0], [-1.5 + 1.5j, -0.5 + 1.5j, 0.5 + 1.5j, 1.5 + 1.5j])
    npt.assert_allclose(grid[1].imag, 0.5)
    assert view.pixel_size == 1 + 1j
    assert view.pixel_of(-1.5 + 1.5j) == (0, 0)
    assert view.pixel_of(1.9 + 0.1j) == (1, 3)
    assert view.pixel_of(5) is None

    with pytest.raises(DomainError):
        tested.Viewport(center=0, half_width=1, half_height=1, px_w=0, px_h=1)
    with pytest.raises(DomainError):
        tested.Viewport(center=0, half_width=0, half_height=1, px_w=1, px_h=1)


def test_gray_levels():
    levels = tested.gray_levels(np.array([1, 10, 100]), 100)
    assert levels.dtype == np.uint8
    assert levels[0] == 1 + np.floor(254 * (1 - np.log1p(1) / np.log1p(100)))
    assert levels[-1] == 1
    assert np.all(np.diff(levels.astype(int)) <= 0)


def test_render_all_escaping():
    view = tested.Viewport(center=-3, half_width=1e-3, half_height=1e-3, px_w=2, px_h=2)
    image = tested.render_locus(view, None, 100)
    pixels = image.to_array()
    assert pixels.shape == (2, 2, 3)
    assert np.all(pixels >= 1)
    assert np.all(pixels[..., 0] == pixels[..., 1])


def test_render_single_member():
    view = tested.Viewport(center=0, half_width=0.1, half_height=0.1, px_w=1, px_h=1)
    image = tested.render_locus(view, None, 100)
    assert image.pixels == bytes(3)


def test_render_lambda_plane_in_yoccoz_disk(half):
    log2 = np.log(2)
    view = tested.Viewport(
        center=log2,
        half_width=1.05 * log2,
        half_height=1.05 * log2,
        px_w=32,
        px_h=32,
        plane=tested.Plane.LAMBDA_BIG,
    )
    image = tested.render_locus(view, half, 200)
    black = np.all(image.to_array() == 0, axis=2)
    assert black.any()
    distances = np.abs(view.grid()[black] - log2)
    assert distances.max() <= log2 + abs(view.pixel_size)
    assert np.all(view.grid()[black].real > 0)


def test_parameters_of(half):
    view = tested.Viewport(0.1, 0.1, 0.1, 3, 3, plane=tested.Plane.LAMBDA_BIG)
    lams = tested.parameters_of(view, half)
    npt.assert_allclose(lams**2, np.exp(view.grid()), rtol=1e-14)
    with pytest.raises(DomainError):
        tested.parameters_of(view, None)


def test_encode_ppm():
    white = tested.RasterImage(1, 1, b"\xff\xff\xff")
    assert tested.encode_ppm(white) == b"P6\n1 1\n255\n\xff\xff\xff"
    black_white = tested.RasterImage(2, 1, b"\x00\x00\x00\xff\xff\xff")
    assert tested.encode_ppm(black_white) == b"P6\n2 1\n255\n" + bytes(3) + b"\xff" * 3

    rng = np.random.default_rng(0)
    image = tested.RasterImage.from_array(rng.integers(0, 256, (8, 8, 3), dtype=np.uint8))
    assert tested.decode_ppm(tested.encode_ppm(image)) == image

    with pytest.raises(DomainError):
        tested.RasterImage(2, 2, bytes(3))


def test_decode_ppm_errors():
    with pytest.raises(DomainError):
        tested.decode_ppm(b"P5\n1 1\n255\n\x00")
    with pytest.raises(DomainError):
        tested.decode_ppm(b"P6\n1 x\n255\n\x00\x00\x00")


def test_membership_csv():
    view = tested.Viewport(center=-1, half_width=2, half_height=1, px_w=4, px_h=2)
    frame = tested.membership_csv(view, None, 50)
    assert list(frame.columns) == ["row", "column", "re", "im", "member", "escape_step"]
    assert len(frame) == 8
    assert (frame["member"] == (frame["escape_step"] == 0)).all()
    image = tested.render_locus(view, None, 50)
    black = np.all(image.to_array() == 0, axis=2).ravel()
    npt.assert_array_equal(black, frame["member"].to_numpy())
