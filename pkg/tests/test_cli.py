"""Command-line interface: JSON shapes, exit codes, determinism, CSV export."""

from __future__ import annotations

import csv
import json

import pytest
from click.testing import CliRunner

from nilzeta.cli import main

VERIFY_CHECKS = {
    "jacobi-identity",
    "generator-images-vanish",
    "correction-closed-form",
    "inversion-identity",
    "first-order-commutation",
    "eigen-relation",
    "operator-shift",
    "degree-annihilation",
    "descent-diagram",
    "interpolation-identity",
}


@pytest.fixture()
def runner() -> CliRunner:
    return CliRunner()


def invoke_json(runner: CliRunner, args: list[str], exit_code: int = 0) -> dict:
    result = runner.invoke(main, args)
    assert result.exit_code == exit_code, result.output
    return json.loads(result.output)


def test_help_lists_commands(runner) -> None:
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for command in ("algebra", "reduce", "verify", "poles", "spectrum"):
        assert command in result.output


def test_algebra_check_valid(runner, heis, spec_file) -> None:
    payload = invoke_json(runner, ["algebra", "check", spec_file(heis)])
    assert payload["valid"] is True
    assert payload["spec"] == {"n": 1, "alpha": [1], "partition": [[1]]}
    assert payload["basis_size"] == 3  # X1, Y[0], Y[1]
    assert payload["index_set_size"] == 2
    assert payload["nilpotency_class"] == 2
    assert payload["isotropic_dimension"] == 1
    assert payload["jacobi"] == "ok"


def test_algebra_check_invalid_description(runner, tmp_path) -> None:
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 0, "alpha": [], "partition": []}\n', encoding="utf-8")
    result = runner.invoke(main, ["algebra", "check", str(bad)])
    assert result.exit_code == 1
    payload = json.loads(result.output)
    assert payload["valid"] is False
    assert "error" in payload


def test_algebra_check_malformed_json(runner, tmp_path) -> None:
    bad = tmp_path / "broken.json"
    bad.write_text("{not json", encoding="utf-8")
    result = runner.invoke(main, ["algebra", "check", str(bad)])
    assert result.exit_code == 1
    assert json.loads(result.output)["valid"] is False


def test_reduce_frozen_values(runner, heis, quad, spec_file) -> None:
    heis_file = spec_file(heis)
    payload = invoke_json(runner, ["reduce", heis_file, "--expr", "Y[0]"])
    assert payload == {"canonical": "i", "in_ideal": False, "degree": 0}

    payload = invoke_json(runner, ["reduce", heis_file, "--expr", "Y[0] - i"])
    assert payload == {"canonical": "0", "in_ideal": True, "degree": 0}

    payload = invoke_json(runner, ["reduce", spec_file(quad), "--expr", "Y[1]^2"])
    assert payload == {"canonical": "2i * Y[2]", "in_ideal": False, "degree": 1}


def test_reduce_rejects_bad_expression(runner, heis, spec_file) -> None:
    result = runner.invoke(main, ["reduce", spec_file(heis), "--expr", "Y[9]"])
    assert result.exit_code == 1
    assert "error" in json.loads(result.output)


def test_verify_passes_and_reports_all_checks(runner, heis, spec_file) -> None:
    payload = invoke_json(runner, ["verify", spec_file(heis), "--max-degree", "2"])
    assert payload["all_passed"] is True
    assert payload["max_degree"] == 2
    checks = {entry["name"]: entry for entry in payload["checks"]}
    assert set(checks) == VERIFY_CHECKS
    assert all(entry["status"] == "pass" for entry in checks.values())


def test_poles_json_frozen(runner, heis, spec_file) -> None:
    payload = invoke_json(
        runner,
        ["poles", spec_file(heis), "--q", "0", "--s0", "2", "--lmax", "4"],
    )
    assert payload["b_roots"] == ["-2"]
    assert payload["physical_abscissa"] == "-1"
    assert [e["omega"] for e in payload["entries"]] == ["-1", "-1/2", "0", "1/2", "1"]
    first = payload["entries"][0]
    assert first["multiplicity"] == 1
    assert first["witnesses"] == [{"i": [1], "r": [1], "l": 0}]
    assert payload["s0"] == "2"
    assert payload["l_max"] == 4


def test_poles_csv_export(runner, pair_joint, spec_file, tmp_path) -> None:
    out = tmp_path / "lattice.csv"
    invoke_json(
        runner,
        [
            "poles",
            spec_file(pair_joint),
            "--s0",
            "3",
            "--lmax",
            "2",
            "--csv",
            str(out),
        ],
    )
    with out.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["omega", "multiplicity", "witnesses"]
    assert rows[1] == ["-3/2", "2", "i=[1];r=[1];l=0|i=[2];r=[1];l=0"]
    assert len(rows) == 4  # header + three lattice points


def test_poles_output_is_deterministic(runner, mixed, spec_file) -> None:
    path = spec_file(mixed)
    first = runner.invoke(main, ["poles", path, "--s0", "7/2"])
    second = runner.invoke(main, ["poles", path, "--s0", "7/2"])
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output


def test_spectrum_report(runner, heis, spec_file, tmp_path) -> None:
    report_path = tmp_path / "spectrum.json"
    payload = invoke_json(
        runner,
        [
            "spectrum",
            spec_file(heis),
            "--basis-size",
            "128",
            "--zeta-at",
            "-2",
            "--zeta-at",
            "-0.5",
            "--report",
            str(report_path),
        ],
    )
    assert payload["converged"] == 128
    assert payload["eigenvalues_head"] == pytest.approx([3, 5, 7, 9, 11, 13, 15, 17, 19, 21])
    assert payload["physical_abscissa"] == "-1"
    assert payload["lattice_match"] is True
    assert payload["residue_at_leading_pole"] == pytest.approx(-0.5, abs=1e-3)
    zeta_ok, zeta_refused = payload["zeta"]
    assert zeta_ok["z"] == -2.0
    assert zeta_ok["value_re"] == pytest.approx(0.2337, abs=2e-3)
    assert zeta_ok["value_im"] == 0.0
    assert zeta_ok["tail_bound"] < 0.01
    assert zeta_refused["z"] == -0.5
    assert "error" in zeta_refused
    on_disk = json.loads(report_path.read_text(encoding="utf-8"))
    assert on_disk == payload


def test_spectrum_output_is_deterministic(runner, heis, spec_file) -> None:
    path = spec_file(heis)
    args = ["spectrum", path, "--basis-size", "64"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output


def test_json_output_sorted_keys(runner, heis, spec_file) -> None:
    result = runner.invoke(main, ["poles", spec_file(heis)])
    payload = json.loads(result.output)
    assert list(payload) == sorted(payload)
