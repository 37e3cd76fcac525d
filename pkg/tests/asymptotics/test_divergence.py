"""Unit tests for the divergence experiments"""
import numpy as np
import pytest

import satellite_lab.asymptotics.divergence as tested
from satellite_lab.asymptotics.expansion import residue_contour
from satellite_lab.utils import IrreducibleRational, log_grid


def test_chord_bound():
    bound, signed = tested.chord_bound(2, 3, 0.1)
    assert bound == pytest.approx(2 * np.log(10))
    assert signed == pytest.approx(2 * np.log(10))

    bound, signed = tested.chord_bound(3, 2, 0.1)
    assert bound == pytest.approx(2 * np.log(10))
    assert np.isnan(signed)

    bound, signed = tested.chord_bound(2, 2, 0.1)
    assert np.isnan(bound)
    assert np.isnan(signed)


def test_divergence_scan(half, third):
    t_grid = log_grid(1e-4, 1e-1, 7)
    records = tested.divergence_scan(half, third, t_grid)
    assert [record.t for record in records] == pytest.approx(list(t_grid))
    distances = np.array([record.dist for record in records])
    assert np.all(np.diff(distances) > 0)

    last = records[-1]
    assert abs(last.dist - 2 * np.log(1 / last.t)) <= 10
    assert last.bound == pytest.approx(2 * np.log(1 / last.t))


def test_divergence_scan_small_t(half, third):
    (record,) = tested.divergence_scan(half, third, [1e-6])
    assert 0.9 <= record.dist / (2 * np.log(1e6)) <= 1.1
    assert record.dist >= record.bound - 10


def test_divergence_scan_equal_denominators(half, caplog):
    records = tested.divergence_scan(half, half, [1e-2, 1e-3])
    assert [record.dist for record in records] == [0, 0]
    assert "Equal denominators" in caplog.text


def test_small_limb_scan(half):
    (record,) = tested.small_limb_scan(half, [2], resolution=64, max_iter=100)
    residue = residue_contour(half)
    assert record.n == 2
    assert record.re_lower_bound == pytest.approx(residue.real * 4 * np.pi**2 / (4 * 4))
    assert record.root_lambda.value.real > 0
    assert record.hyp_diam >= 0
    assert record.euclid_diam >= 0


def test_corollary_check(half, third):
    records = tested.corollary_check(half, third, range(2, 33))
    distances = [record.dist for record in records]
    assert [record.n for record in records] == list(range(2, 33))
    assert np.all(np.diff(distances) > 0)
    assert distances[-1] > distances[0] + 1.5
    assert all(record.witness is None for record in records)


def test_corollary_check_matches_the_scan(half, third):
    records = tested.corollary_check(half, third, [2, 8])
    t_values = [2 * np.pi * (n * n - 1) / n**3 for n in (2, 8)]
    scan = tested.divergence_scan(half, third, t_values)
    for record, point in zip(records, scan):
        assert record.dist == pytest.approx(point.dist, abs=1e-6)


def test_corollary_check_equal_denominators(third):
    records = tested.corollary_check(third, IrreducibleRational(2, 3), range(4, 13))
    distances = [record.dist for record in records]
    assert max(distances) - min(distances) < 1


def test_corollary_check_witness(half, third):
    (record,) = tested.corollary_check(half, third, [3], with_witnesses=True)
    if record.witness is not None:
        z = -record.witness**2 / 4
        # 0 is a fixed point of P_lambda
        for _ in range(2 * max(tested.WITNESS_DEPTHS)):
            z = record.witness * z + z * z
        assert abs(z) < 1e-6
        assert record.witness_offset >= 0
    else:
        assert np.isnan(record.witness_offset)
