"""Unit tests for the expansion of Lambda and the residue"""
import numpy as np
import pytest

import satellite_lab.asymptotics.expansion as tested
from satellite_lab.exceptions import DomainError, IllConditionedFit, PrecisionLimit
from satellite_lab.parameters.multiplier import SublimbId, big_lambda, sublimb_root
from satellite_lab.utils import IrreducibleRational, log_grid

BUFF_EPSTEIN_HALF = 1 / (2 * np.log(2)) + 1 / 2


def test_lambda_of_t_zero_one(zero):
    for t in (1e-1, 1e-2, 1e-3):
        value = tested.lambda_of_t(zero, t).value
        assert value == pytest.approx(np.log(2 - np.exp(1j * t)), abs=1e-10)


def test_lambda_of_t_half(half):
    value = tested.lambda_of_t(half, 0.1).value
    assert value.imag == pytest.approx(-0.05, abs=5e-3)
    assert 0 < value.real < 0.1**2

    small = tested.lambda_of_t(half, 0.01).value
    large = tested.lambda_of_t(half, 0.02).value
    assert large.real / small.real == pytest.approx(4, rel=0.1)

    assert abs(tested.lambda_of_t(half, 1e-4).value) < 1e-4


def test_lambda_of_t_along_the_circle(zero, half):
    for t in (1.0, 2.0, -2.5, np.pi):
        value = tested.lambda_of_t(zero, t).value
        assert value == pytest.approx(np.log(2 - np.exp(1j * t)), abs=1e-10)

    t = 3 * np.pi / 4
    root = sublimb_root(SublimbId(half, IrreducibleRational(3, 8))).lambda_
    assert tested.lambda_of_t(half, t).value == pytest.approx(
        big_lambda(half, root).value, abs=1e-9
    )
    assert tested.lambda_of_t(half, -t).value == pytest.approx(
        tested.lambda_of_t(half, t).value.conjugate(), abs=1e-9
    )


def test_lambda_of_t_domain(half):
    with pytest.raises(DomainError):
        tested.lambda_of_t(half, 0)
    with pytest.raises(DomainError):
        tested.lambda_of_t(half, 4.0)
    with pytest.raises(DomainError):
        tested.lambda_of_t(half, -np.pi - 1e-3)


def test_residue_contour(zero, half, third):
    assert tested.residue_contour(zero) == pytest.approx(1, abs=1e-9)

    res = tested.residue_contour(half)
    assert res.real >= BUFF_EPSTEIN_HALF
    assert res == pytest.approx(11 / 8, abs=1e-8)

    res = tested.residue_contour(third)
    conjugate = tested.residue_contour(IrreducibleRational(2, 3))
    assert res == pytest.approx(conjugate.conjugate(), abs=1e-8)
    assert res == pytest.approx((782 + 8j * np.sqrt(3)) / 441, abs=1e-8)
    assert res.real >= 1 / (2 * np.log(2)) + 3 / 4

    with pytest.raises(PrecisionLimit):
        tested.residue_contour(IrreducibleRational(1, 8))


@pytest.mark.parametrize(
    "p, q", [(p, q) for q in range(4, 8) for p in range(1, q) if np.gcd(p, q) == 1]
)
def test_residue_contour_lower_bound(p, q):
    res = tested.residue_contour(IrreducibleRational(p, q))
    assert res.real >= 1 / (2 * np.log(2)) + q / 4 - 1e-6


def test_residue_fit(zero, half, third):
    t_list = log_grid(1e-3, 1e-2, 8)
    report = tested.residue_fit(zero, t_list)
    assert report.res_fit == pytest.approx(1, abs=1e-3)
    assert report.res_contour == pytest.approx(1, abs=1e-9)
    assert report.fit_residual < 1e-3

    report = tested.residue_fit(half, t_list)
    assert abs(report.res_fit - report.res_contour) < 1e-3 * abs(report.res_contour)
    assert str(report.pq) == "1/2"

    for pq in (third, IrreducibleRational(2, 5)):
        report = tested.residue_fit(pq, t_list)
        assert abs(report.res_fit - report.res_contour) < 1e-3 * abs(report.res_contour)


def test_residue_fit_given_contour(zero):
    report = tested.residue_fit(zero, log_grid(1e-3, 1e-2, 6), res_contour=1.0)
    assert report.res_contour == 1


def test_residue_fit_ill_conditioned(half):
    with pytest.raises(IllConditionedFit):
        tested.residue_fit(half, [1e-3, 1e-2, 1e-1])


def test_resitfunction_check(half):
    check = tested.resitfunction_check(half, 0.01)
    assert abs(check.h_value - check.h_expected) < 1e-6 * abs(check.h_expected)
    assert check.pcal_closed == pytest.approx(check.pcal_tracked, rel=1e-6)
    with pytest.raises(DomainError):
        tested.resitfunction_check(half, 0)
