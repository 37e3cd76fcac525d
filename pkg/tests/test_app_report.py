"""test app.report"""
import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

import satellite_lab.app.report as tested
from satellite_lab.asymptotics.divergence import CorollaryRecord, ExperimentRecord
from satellite_lab.exceptions import DomainError
from satellite_lab.parameters.multiplier import HalfPlanePoint


def _experiment_record(t=1e-3):
    return ExperimentRecord(
        t=t,
        big_lambda=HalfPlanePoint(complex(1 / 3 * t**2, -t / 2)),
        M=HalfPlanePoint(complex(np.pi * t**2, -t / 3)),
        dist=12.345678901234567,
        bound=2 * np.log(1 / t),
        signed_bound=2 * np.log(1 / t),
    )


def test_to_frame():
    frame = tested.to_frame([_experiment_record()], "divergence")
    assert list(frame.columns) == tested.SCHEMAS["divergence"].columns
    assert frame["Lambda_im"][0] == -5e-4

    with pytest.raises(DomainError):
        tested.to_frame([], "unknown")
    with pytest.raises(DomainError):
        tested.to_frame([{"t": 1.0}], "expansion")


def test_emit_report_csv():
    runner = CliRunner()
    with runner.isolated_filesystem():
        tested.emit_report([], "divergence", "empty.csv")
        with open("empty.csv", encoding="utf-8") as file_:
            assert file_.read().splitlines() == [",".join(tested.SCHEMAS["divergence"].columns)]

        tested.emit_report([_experiment_record()], "divergence", "one.csv")
        with open("one.csv", encoding="utf-8") as file_:
            assert len(file_.read().splitlines()) == 2


def test_emit_report_round_trip():
    records = [_experiment_record(t) for t in (1e-1, 1e-3, 1.2345e-5)]
    expected = tested.to_frame(records, "divergence")
    runner = CliRunner()
    with runner.isolated_filesystem():
        tested.emit_report(records, "divergence", "records.csv")
        parsed = pd.read_csv("records.csv", float_precision="round_trip")
    pd.testing.assert_frame_equal(parsed, expected, check_exact=True)


def test_emit_report_json_with_missing_values():
    record = CorollaryRecord(
        n=3, dist=1.5, big_lambda=HalfPlanePoint(0.1 + 0.2j), M=HalfPlanePoint(0.3 - 0.1j)
    )
    runner = CliRunner()
    with runner.isolated_filesystem():
        tested.emit_report([record], "corollary", "corollary.json")
        with open("corollary.json", encoding="utf-8") as file_:
            rows = json.load(file_)
    assert rows == [
        {
            "n": 3,
            "dist": 1.5,
            "Lambda_re": 0.1,
            "Lambda_im": 0.2,
            "M_re": 0.3,
            "M_im": -0.1,
            "witness_re": None,
            "witness_im": None,
            "witness_offset": None,
        }
    ]
