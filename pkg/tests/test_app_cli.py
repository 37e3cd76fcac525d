"""test app.cli"""
import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

import satellite_lab.app.cli as tested
import satellite_lab.render.raster as raster


def _invoke(arguments):
    return CliRunner().invoke(tested.cli, arguments)


def test_list_checks():
    result = _invoke(["--list-checks"])
    assert result.exit_code == 0, result.output
    for command in tested.CHECKS:
        assert f"{command}: " in result.output


def test_residue():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(tested.cli, ["residue", "--pq", "1/2", "--tmin", "1e-3"])
        assert result.exit_code == 0, result.output
        with open("residue.json", encoding="utf-8") as file_:
            (report,) = json.load(file_)
        assert report["pq"] == "1/2"
        assert report["res_contour_re"] >= 1.221
        assert report["res_contour_re"] == pytest.approx(11 / 8, abs=1e-8)


def test_residue_reduces_the_rational():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(
            tested.cli, ["residue", "--pq", "2/4", "--tmin", "1e-3", "--output", "res.csv"]
        )
        assert result.exit_code == 0, result.output
        assert "Note: 2/4 reduced to 1/2" in result.output
        assert pd.read_csv("res.csv")["pq"].tolist() == ["1/2"]


@pytest.mark.parametrize("rational", ["1/0", "half", "1/2/3"])
def test_usage_errors(rational):
    result = _invoke(["residue", "--pq", rational])
    assert result.exit_code == tested.EXIT_USAGE


def test_missing_option():
    assert _invoke(["residue"]).exit_code == tested.EXIT_USAGE
    assert _invoke(["render", "--plane", "Lambda"]).exit_code == tested.EXIT_USAGE


def test_domain_error_exit_code():
    result = _invoke(["residue", "--pq", "1/8"])
    assert result.exit_code == tested.EXIT_USAGE


def test_expand():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(
            tested.cli, ["expand", "--pq", "0/1", "--tmin", "1e-3", "--points", "4"]
        )
        assert result.exit_code == 0, result.output
        frame = pd.read_csv("expansion.csv")
        assert list(frame.columns) == [
            "t",
            "Lambda_re",
            "Lambda_im",
            "predicted_re",
            "predicted_im",
            "error",
        ]
        assert len(frame) == 4
        assert np.all(frame["error"] < frame["t"] ** 2)


def test_diverge():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(
            tested.cli,
            [
                "diverge",
                "--pq",
                "1/2",
                "--PQ",
                "1/3",
                "--tmin",
                "1e-4",
                "--tmax",
                "1e-1",
                "--points",
                "7",
            ],
        )
        assert result.exit_code == 0, result.output
        frame = pd.read_csv("divergence.csv")
        assert len(frame) == 7
        assert np.all(np.diff(frame["dist"]) > 0)


def test_tori():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(
            tested.cli, ["tori", "--lambda1", "1", "--lambda2", "2", "--eps", "0.05"]
        )
        assert result.exit_code == 0, result.output
        with open("tori.json", encoding="utf-8") as file_:
            (row,) = json.load(file_)
        assert row["dist"] == pytest.approx(np.log(2))
        assert row["log_K"] == pytest.approx(np.log(2))
        assert (row["p"], row["q"], row["r"], row["s"]) == (0, 1, 1, 0)
        assert row["case"].startswith("I")


def test_tori_without_search():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(
            tested.cli, ["tori", "--lambda1", "1+1i", "--lambda2", "2-1i", "--no-search"]
        )
        assert result.exit_code == 0, result.output
        with open("tori.json", encoding="utf-8") as file_:
            (row,) = json.load(file_)
        assert row["p"] is None
        assert row["log_ratio"] is None


def test_render():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(
            tested.cli,
            [
                "render",
                "--center",
                "-3",
                "--half-width",
                "0.001",
                "--half-height",
                "0.001",
                "--width",
                "2",
                "--height",
                "2",
                "--max-iter",
                "50",
                "--membership-path",
                "members.csv",
            ],
        )
        assert result.exit_code == 0, result.output
        with open("locus.ppm", "rb") as file_:
            image = raster.decode_ppm(file_.read())
        assert (image.width, image.height) == (2, 2)
        assert not pd.read_csv("members.csv")["member"].any()


def test_render_lambda_plane():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(
            tested.cli,
            [
                "render",
                "--pq",
                "1/2",
                "--plane",
                "Lambda",
                "--width",
                "32",
                "--height",
                "32",
                "--max-iter",
                "200",
                "--output",
                "satellite.ppm",
            ],
        )
        assert result.exit_code == 0, result.output
        with open("satellite.ppm", "rb") as file_:
            assert file_.read().startswith(b"P6\n32 32\n255\n")


def test_misiurewicz():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(tested.cli, ["misiurewicz", "--pq", "0/1", "--seed", "4.1"])
        assert result.exit_code == 0, result.output
        with open("misiurewicz.json", encoding="utf-8") as file_:
            (row,) = json.load(file_)
        assert row["lambda_re"] == pytest.approx(4)
        assert row["residual"] < 1e-9


def test_misiurewicz_numerical_failure():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(tested.cli, ["misiurewicz", "--pq", "0/1", "--seed", "-2.1"])
        assert result.exit_code == tested.EXIT_NUMERICAL


def test_abort_exit_code(monkeypatch):
    def _abort(*_, **__):
        raise tested.click.Abort()

    monkeypatch.setattr(tested.expansion, "residue_fit", _abort)
    result = _invoke(["residue", "--pq", "1/2"])
    assert result.exit_code == tested.EXIT_USAGE
    assert "Aborted!" in result.output


def test_corollary():
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(
            tested.cli, ["corollary", "--pq", "1/2", "--PQ", "1/3", "--nmin", "2", "--nmax", "4"]
        )
        assert result.exit_code == 0, result.output
        assert "3 root pairs" in result.output
        frame = pd.read_csv("corollary.csv")
        assert frame["n"].tolist() == [2, 3, 4]
        assert np.all(np.diff(frame["dist"]) > 0)
