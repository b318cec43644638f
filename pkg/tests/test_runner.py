#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
import json

import pytest

import gaussfield.configuration as config
from gaussfield.analysis.sandwich import SandwichReport
from gaussfield.runner import ReturnCode, run_command, set_configuration


def _run(command, **values):
    set_configuration(config.RunConfig(**values))
    return run_command(command)


def _records(path):
    return {
        (record["metric"], record["parameters"]): record
        for record in json.loads(path.read_text())
    }


@pytest.fixture()
def decomposition_file(tmp_path):
    path = tmp_path / "decomp.json"
    assert _run(config.Command.DECOMPOSE, k_max=3, out=str(path)) == ReturnCode.OK
    return path


def test_set_configuration():
    configuration = config.RunConfig(seed=3)
    set_configuration(configuration)
    assert config.configuration is configuration


def test_decompose(tmp_path):
    out = tmp_path / "decomp.json"
    report = tmp_path / "report.csv"
    code = _run(config.Command.DECOMPOSE, k_max=3, out=str(out), report=str(report))
    assert code == ReturnCode.OK
    assert json.loads(out.read_text())["metadata"]["k_max"] == 3
    lines = report.read_text().splitlines()
    assert lines[0] == "metric,parameters,value,tolerance,passed"
    assert any(line.startswith("lambda-sum,k_max=3,") for line in lines)


def test_decompose_needs_out():
    assert _run(config.Command.DECOMPOSE, k_max=2) == ReturnCode.USAGE_ERROR


def test_decompose_gaussian_measure(tmp_path):
    out = tmp_path / "measure.json"
    code = _run(
        config.Command.DECOMPOSE, kernel="gaussian-measure", k_max=2, out=str(out)
    )
    assert code != ReturnCode.USAGE_ERROR
    assert json.loads(out.read_text())["metadata"]["space"] == "measure"


def test_unknown_kernel_is_a_usage_error(tmp_path):
    code = _run(
        config.Command.DECOMPOSE, kernel="matern:1.5", out=str(tmp_path / "d.json")
    )
    assert code == ReturnCode.USAGE_ERROR


def test_sample(tmp_path, decomposition_file):
    out = tmp_path / "samples.csv"
    code = _run(
        config.Command.SAMPLE,
        decomp=str(decomposition_file),
        out=str(out),
        n_samples=3,
        grid_resolution=4,
    )
    assert code == ReturnCode.OK
    lines = out.read_text().splitlines()
    assert lines[0] == "sample,x1,value"
    assert len(lines) == 1 + 3 * 17


def test_sample_with_energy_cutoff(tmp_path, decomposition_file):
    report = tmp_path / "report.json"
    code = _run(
        config.Command.SAMPLE,
        decomp=str(decomposition_file),
        out=str(tmp_path / "samples.csv"),
        report=str(report),
        n_samples=2,
        grid_resolution=3,
        energy_cutoff=0.5,
    )
    assert code == ReturnCode.OK
    records = _records(report)
    assert records[("retained-energy", "energy_cutoff=0.5")]["passed"]
    assert records[("retained-terms", "energy_cutoff=0.5")]["value"] < 9


def test_sample_needs_decomposition(tmp_path):
    code = _run(config.Command.SAMPLE, out=str(tmp_path / "samples.csv"))
    assert code == ReturnCode.USAGE_ERROR


def test_sample_of_missing_file(tmp_path):
    code = _run(
        config.Command.SAMPLE,
        decomp=str(tmp_path / "missing.json"),
        out=str(tmp_path / "samples.csv"),
    )
    assert code == ReturnCode.USAGE_ERROR


def test_validate_cov_is_reproducible(tmp_path, decomposition_file):
    outputs = []
    for run in range(2):
        out = tmp_path / f"cov-{run}.csv"
        report = tmp_path / f"report-{run}.csv"
        code = _run(
            config.Command.VALIDATE_COV,
            decomp=str(decomposition_file),
            out=str(out),
            report=str(report),
            n_samples=200,
        )
        assert code != ReturnCode.USAGE_ERROR
        outputs.append((out.read_bytes(), report.read_bytes()))
    assert outputs[0] == outputs[1]
    table = outputs[0][0].decode().splitlines()
    assert table[0] == "x,y,estimate,standard_error,target"
    assert len(table) == 10


def test_validate_cov_rejects_white_noise(tmp_path):
    code = _run(
        config.Command.VALIDATE_COV,
        kernel="white-noise:lebesgue",
        k_max=2,
        n_samples=10,
    )
    assert code == ReturnCode.USAGE_ERROR


def test_holder(tmp_path):
    report = tmp_path / "holder.json"
    code = _run(
        config.Command.HOLDER,
        k_max=4,
        grid_resolution=4,
        n_samples=4,
        gamma=[0.5, 1.0],
        report=str(report),
    )
    assert code != ReturnCode.USAGE_ERROR
    metrics = {metric for metric, _ in _records(report)}
    assert metrics == {"mean-holder-exponent", "section-seminorm-growth"}


def test_holder_needs_a_fine_grid():
    code = _run(config.Command.HOLDER, k_max=2, grid_resolution=3, n_samples=2)
    assert code == ReturnCode.USAGE_ERROR


def test_holder_rejects_white_noise():
    code = _run(config.Command.HOLDER, kernel="white-noise:lebesgue", n_samples=2)
    assert code == ReturnCode.USAGE_ERROR


def test_holder_reads_matching_decomposition(decomposition_file):
    code = _run(
        config.Command.HOLDER,
        decomp=str(decomposition_file),
        grid_resolution=4,
        n_samples=2,
        gamma=[0.5],
    )
    assert code != ReturnCode.USAGE_ERROR


@pytest.mark.parametrize(
    "command", [config.Command.HOLDER, config.Command.MERCER_ORACLE]
)
def test_kernel_must_match_decomposition(command, decomposition_file):
    code = _run(
        command,
        kernel="exp-alpha:0.9",
        decomp=str(decomposition_file),
        grid_resolution=4,
        grid_size=32,
        n_samples=2,
    )
    assert code == ReturnCode.USAGE_ERROR


def test_besov(tmp_path):
    report = tmp_path / "besov.json"
    code = _run(config.Command.BESOV, k_max=6, gamma=[0.4, 0.6], report=str(report))
    assert code == ReturnCode.OK
    records = _records(report)
    assert ("besov-level-ratio", "gamma=0.40000000000000002;level=3") in records
    assert ("besov-norm-estimate", "gamma=0.59999999999999998") in records


def test_whitenoise(tmp_path):
    out = tmp_path / "noise.json"
    report = tmp_path / "noise-report.json"
    code = _run(
        config.Command.WHITENOISE,
        kernel="white-noise:lebesgue",
        k_max=3,
        n_samples=500,
        out=str(out),
        report=str(report),
    )
    assert code != ReturnCode.USAGE_ERROR
    assert out.exists()
    records = json.loads(report.read_text())
    truncated = [r for r in records if r["metric"] == "truncated-covariance-deviation"]
    assert len(truncated) == 3
    assert all(record["passed"] for record in truncated)


def test_mercer_oracle(tmp_path):
    report = tmp_path / "oracle.json"
    code = _run(
        config.Command.MERCER_ORACLE,
        k_max=3,
        grid_size=64,
        n_samples=200,
        report=str(report),
    )
    assert code != ReturnCode.USAGE_ERROR
    records = json.loads(report.read_text())
    by_metric = {record["metric"]: record for record in records}
    assert by_metric["mercer-trace-deviation"]["passed"]
    assert by_metric["norm-square-identity"]["passed"]
    oracle = [r for r in records if r["metric"] == "oracle-covariance-deviation"]
    assert len(oracle) == 9


def test_sandwich(tmp_path):
    report = tmp_path / "sandwich.csv"
    code = _run(config.Command.SANDWICH, n_triples=1000, report=str(report))
    assert code == ReturnCode.OK
    assert "lower-bound-violations,alpha=0.5;triples=1000,0,0,true" in (
        report.read_text().splitlines()
    )


def test_failed_check_gives_validation_failure(monkeypatch):
    report = SandwichReport(1, 0, 0.5, 0.0, 1, 0, 1)
    monkeypatch.setattr(
        "gaussfield.runner.random_sandwich_check", lambda *args: report
    )
    assert _run(config.Command.SANDWICH, n_triples=1) == ReturnCode.VALIDATION_FAILED
