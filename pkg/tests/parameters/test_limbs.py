"""Unit tests for membership, Yoccoz disks and sublimb scans"""
import numpy as np
import pytest

import satellite_lab.parameters.limbs as tested
from satellite_lab.exceptions import DomainError, LimbUnresolved, RootNotMember
from satellite_lab.parameters.multiplier import HalfPlanePoint, SublimbId
from satellite_lab.utils import sublimb_rational


def test_membership():
    assert tested.membership(-1, 10**4) == (True, None)
    assert tested.membership(-1.1, 1000) == (True, None)
    member, step = tested.membership(-3, 100)
    assert not member
    assert step < 20
    with pytest.raises(DomainError):
        tested.membership(0, 0)


def test_escape_steps():
    lams = np.array([[-3, 0], [-1.1, 4.5]])
    steps = tested.escape_steps(lams, 200)
    assert steps.shape == (2, 2)
    assert steps[0, 0] == tested.membership(-3, 200)[1]
    assert steps[0, 1] == 0
    assert steps[1, 0] == 0
    assert steps[1, 1] > 0


def test_escape_steps_thread_count(monkeypatch):
    lams = -1.5 + np.linspace(-0.5, 0.5, 16)[None, :] + 1j * np.linspace(-0.5, 0.5, 9)[:, None]
    monkeypatch.setenv("SATLAB_THREADS", "1")
    serial = tested.escape_steps(lams, 100)
    monkeypatch.setenv("SATLAB_THREADS", "4")
    np.testing.assert_array_equal(tested.escape_steps(lams, 100), serial)


def test_yoccoz_disk_check():
    assert tested.yoccoz_disk_check(0)
    assert tested.yoccoz_disk_check(np.log(2))
    assert tested.yoccoz_disk_check(HalfPlanePoint(np.log(2) + 0.5j))
    assert not tested.yoccoz_disk_check(1.4)
    assert not tested.yoccoz_disk_check(HalfPlanePoint(0.1 + 1j))


def test_yoccoz_dynamical_disk(half, third):
    center, radius = tested.yoccoz_dynamical_disk(1, half, 1)
    assert radius == pytest.approx(np.log(2) / 2)
    assert center == pytest.approx(np.log(2) / 2 + 1j * np.pi)
    assert tested.in_yoccoz_dynamical_disk(center, 1, half, 1)
    assert tested.in_yoccoz_dynamical_disk(1j * np.pi, 1, half, 1)
    assert not tested.in_yoccoz_dynamical_disk(0, 1, half, 1)

    _, radius = tested.yoccoz_dynamical_disk(3, third, 2, degree=3)
    assert radius == pytest.approx(np.log(3) / 2)
    with pytest.raises(DomainError):
        tested.yoccoz_dynamical_disk(0, half, 1)


def test_sublimb_diameter(half):
    sublimb = SublimbId(half, half)
    euclid, hyperbolic = tested.sublimb_diameter(sublimb, 128, 200, half_width=1.0)
    assert 0 < euclid < tested.DEFAULTS.yoccoz_constant / 2
    assert 0 < hyperbolic < np.inf


def test_sublimb_diameter_errors(half):
    sublimb = SublimbId(half, half)
    with pytest.raises(RootNotMember):
        tested.sublimb_diameter(sublimb, 64, 50, center=5, half_width=0.5)
    with pytest.raises(LimbUnresolved):
        tested.sublimb_diameter(SublimbId(half, sublimb_rational(2)), 64, 2000, half_width=2.0)
    with pytest.raises(DomainError):
        tested.sublimb_diameter(sublimb, 32, 50)


def test_sublimb_diameter_default_window(half):
    sublimb = SublimbId(half, sublimb_rational(2))
    euclid, hyperbolic = tested.sublimb_diameter(sublimb, 64, 2000)
    assert 0 < euclid <= tested.DEFAULTS.yoccoz_constant / 8
    assert hyperbolic > 0


def test_sublimb_diameter_decay(half):
    n_values = np.array([2, 3, 4])
    euclid = [
        tested.sublimb_diameter(SublimbId(half, sublimb_rational(n)), 64, 2000)[0]
        for n in n_values
    ]
    assert all(value > 0 for value in euclid)
    assert np.all(np.diff(euclid) < 0)
    # at least as fast as the Yoccoz rate C / q' = C / n^3
    slope = np.polyfit(np.log(n_values), np.log(euclid), 1)[0]
    assert slope <= -3 + 0.4
    assert all(
        value <= tested.DEFAULTS.yoccoz_constant / n**3 for value, n in zip(euclid, n_values)
    )
