"""Unit tests for utils"""
import numpy as np
import numpy.testing as npt
import pytest

import satellite_lab.utils as tested
from satellite_lab.exceptions import DomainError


def test_irreducible_rational():
    half = tested.IrreducibleRational(1, 2)
    assert str(half) == "1/2"
    assert half.omega == -1
    assert half.value == 0.5
    assert tested.IrreducibleRational(0, 1).omega == 1
    assert tested.IrreducibleRational(1, 4).omega == pytest.approx(1j, abs=1e-15)

    with pytest.raises(DomainError):
        tested.IrreducibleRational(2, 4)
    with pytest.raises(DomainError):
        tested.IrreducibleRational(3, 2)
    with pytest.raises(DomainError):
        tested.IrreducibleRational(0, 0)


def test_reduced():
    assert tested.IrreducibleRational.reduced(2, 4) == tested.IrreducibleRational(1, 2)
    assert tested.IrreducibleRational.reduced(-1, 3) == tested.IrreducibleRational(2, 3)
    assert tested.IrreducibleRational.reduced(3, -6) == tested.IrreducibleRational(1, 2)
    assert tested.IrreducibleRational.reduced(0, 5) == tested.IrreducibleRational(0, 1)
    with pytest.raises(DomainError):
        tested.IrreducibleRational.reduced(1, 0)


def test_parse_rational():
    assert tested.parse_rational("1/3") == (tested.IrreducibleRational(1, 3), False)
    assert tested.parse_rational(" 2/4 ") == (tested.IrreducibleRational(1, 2), True)
    for text in ("1", "a/b", "1/2/3", "1/0"):
        with pytest.raises(DomainError):
            tested.parse_rational(text)


def test_sublimb_rational():
    assert tested.sublimb_rational(2) == tested.IrreducibleRational(3, 8)
    assert tested.sublimb_rational(3) == tested.IrreducibleRational(8, 27)
    with pytest.raises(DomainError):
        tested.sublimb_rational(1)


def test_proper_divisors():
    assert tested.proper_divisors(1) == []
    assert tested.proper_divisors(7) == [1]
    assert tested.proper_divisors(12) == [1, 2, 3, 4, 6]


def test_max_workers(monkeypatch):
    monkeypatch.setenv("SATLAB_THREADS", "3")
    assert tested.max_workers() == 3
    monkeypatch.setenv("SATLAB_THREADS", "0")
    assert tested.max_workers() == 1
    monkeypatch.setenv("SATLAB_THREADS", "many")
    assert tested.max_workers() >= 1


def test_parallel_map_keeps_order(monkeypatch):
    items = list(range(50))
    monkeypatch.setenv("SATLAB_THREADS", "4")
    assert tested.parallel_map(lambda x: x * x, items) == [x * x for x in items]
    monkeypatch.setenv("SATLAB_THREADS", "1")
    assert tested.parallel_map(lambda x: x * x, items) == [x * x for x in items]


def test_log_grid():
    grid = tested.log_grid(1e-4, 1e-1, 4)
    npt.assert_allclose(grid, [1e-1, 1e-2, 1e-3, 1e-4])
    assert np.all(np.diff(grid) < 0)
    with pytest.raises(DomainError):
        tested.log_grid(0, 1, 3)
    with pytest.raises(DomainError):
        tested.log_grid(1e-2, 1e-3, 3)
