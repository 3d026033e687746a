"""Suite orchestration, reports, and the convergence table."""

import json

import pytest

from nullcone import convergence_study, run_suite
from nullcone.suites import CONVERGENCE_COLUMNS, SuiteReport, write_csv


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("bogus", "zero", band_limit=8)


def test_unknown_tolerance_rejected():
    with pytest.raises(ValueError):
        run_suite("spectral-core", "zero", band_limit=8, tol_overrides={"nope": 1.0})


def test_report_json_roundtrip():
    report = run_suite("spectral-core", "zero", band_limit=16)
    data = json.loads(report.to_json())
    back = SuiteReport.from_dict(data)
    assert back.suite == report.suite
    assert back.band_limit == report.band_limit
    assert len(back.checks) == len(report.checks)
    for a, b in zip(back.checks, report.checks):
        assert a == b
    assert data["passed"] == report.passed


def test_full_suite_passes_at_default_band_limit():
    report = run_suite("all", "ylm:2,0,0.2", band_limit=32)
    failing = [c for c in report.checks if not c.passed]
    assert report.passed, failing


def test_kw_suite_trivial_and_seeded():
    report = run_suite("kw", "zero", band_limit=16)
    assert report.passed
    names = [c.name for c in report.checks]
    assert "kw_negative_control_min" not in names  # vacuous for round metric
    report48 = run_suite("kw", "random:7,8,0.5", band_limit=48)
    assert report48.passed
    names48 = {c.name: c for c in report48.checks}
    assert names48["kw_negative_control_min"].value >= 1e-3


def test_tolerance_override_flips_result():
    report = run_suite(
        "spectral-core", "zero", band_limit=16, tol_overrides={"sh_roundtrip": 1e-30}
    )
    assert not report.passed


def test_determinism_field_by_field():
    first = run_suite("kw", "random:7,8,0.5", band_limit=24, seed=3)
    second = run_suite("kw", "random:7,8,0.5", band_limit=24, seed=3)
    assert len(first.checks) == len(second.checks)
    for a, b in zip(first.checks, second.checks):
        assert a.name == b.name
        assert abs(a.value - b.value) <= 1e-13 * max(abs(a.value), 1.0)


def test_convergence_zero_exponent(tmp_path):
    rows = convergence_study("zero", [8, 16])
    for row in rows:
        for column in CONVERGENCE_COLUMNS[1:]:
            assert row[column] <= 1e-12, (column, row)
    path = tmp_path / "table.csv"
    write_csv(rows, str(path))
    lines = path.read_text().strip().splitlines()
    assert lines[0] == ",".join(CONVERGENCE_COLUMNS)
    assert len(lines) == 3


def test_convergence_residuals_decay():
    rows = convergence_study("random:3,6,0.8", [16, 32])
    for column in CONVERGENCE_COLUMNS[1:]:
        hi, lo = rows[0][column], rows[1][column]
        # Once at the round-off floor there is nothing left to decay.
        assert lo <= hi / 10.0 or hi <= 1e-11, (column, hi, lo)


def test_convergence_input_validation():
    with pytest.raises(ValueError):
        convergence_study("zero", [4, 16])
    with pytest.raises(ValueError):
        convergence_study("zero", [32, 16])
