import json
import math

import numpy as np
import pytest

import entloc as el
from entloc.oracle import (
    OracleReport,
    SpecSampler,
    exhaustive_bipartition_scan,
    oracle_pt_log_negativity,
    oracle_spectrum_multiplicities,
    reports_to_csv_text,
    run_oracle_suite,
    summarize_reports,
    write_suite_outputs,
)


def _split(m, n):
    return el.ModeBipartition(tuple(range(m)), tuple(range(m, m + n)))


def test_oracle_vacuum_zero():
    assert oracle_pt_log_negativity(el.vacuum_cm(3), _split(1, 2)) == 0.0


def test_oracle_two_mode_squeezed_analytic():
    assert oracle_pt_log_negativity(el.two_mode_squeezed(0.5), _split(1, 1)) == pytest.approx(
        1.0, abs=1e-9
    )


def test_oracle_multiplicities_fully_symmetric():
    spec = el.FullySymmetricSpec(6, 1.5, 0.25, -0.2)
    clusters = oracle_spectrum_multiplicities(el.fully_symmetric_cm(spec))
    assert sorted(m for _, m in clusters) == [1, 5]


def test_oracle_multiplicities_thermal_distinct():
    clusters = oracle_spectrum_multiplicities(el.thermal_cm([1.1, 1.9, 2.7]))
    assert [m for _, m in clusters] == [1, 1, 1]


def test_oracle_multiplicities_bisymmetric():
    spec = el.BisymmetricSpec(3, 4, 1.5, 0.2, -0.1, 1.7, 0.25, -0.12, 0.3, -0.25)
    clusters = oracle_spectrum_multiplicities(el.bisymmetric_cm(spec))
    mult = sorted(m for _, m in clusters)
    assert mult[-1] >= 3 and mult[-2] >= 2


def test_exhaustive_scan_vacuum_all_zero():
    scan = exhaustive_bipartition_scan(el.ghz_type_pure(8, 1.0))
    assert [en for _, en in scan] == [0.0] * 4


@pytest.mark.parametrize("b", [1.2, 1.5, 2.0])
def test_exhaustive_scan_monotone_pure(b):
    scan = exhaustive_bipartition_scan(el.ghz_type_pure(20, b))
    values = [en for _, en in scan]
    assert all(values[i] <= values[i + 1] + 1e-12 for i in range(len(values) - 1))


def test_exhaustive_scan_monotone_mixed():
    import dataclasses

    parent = el.ghz_type_spec(24, 1.5)
    spec = dataclasses.replace(parent, modes=20)
    scan = exhaustive_bipartition_scan(el.fully_symmetric_cm(spec))
    values = [en for _, en in scan]
    assert all(values[i] <= values[i + 1] + 1e-12 for i in range(len(values) - 1))


def test_exhaustive_scan_rejects_large_input():
    from entloc.errors import InvalidArgumentError

    with pytest.raises(InvalidArgumentError):
        exhaustive_bipartition_scan(el.vacuum_cm(31))


def test_sampler_deterministic():
    a = SpecSampler(2024)
    b = SpecSampler(2024)
    for _ in range(10):
        assert a.bisymmetric() == b.bisymmetric()


def test_sampler_tracks_rejections():
    sampler = SpecSampler(5)
    for _ in range(20):
        sampler.bisymmetric()
    assert sampler.accepted == 20
    assert sampler.attempts >= 20
    assert 0.0 <= sampler.rejection_rate < 1.0


def test_separable_sampler_produces_separable_states():
    sampler = SpecSampler(6)
    for _ in range(10):
        spec = sampler.separable_bisymmetric()
        report = el.equivalent_report(spec)
        assert report.separable is True


def test_report_compare_pass_and_fail():
    good = OracleReport.compare("x", 1.0, 1.0 + 1e-9)
    assert good.passed
    bad = OracleReport.compare("x", 1.0, 1.1)
    assert not bad.passed
    near_zero = OracleReport.compare("x", 0.0, 1e-10)
    assert near_zero.passed


def test_suite_small_run_all_pass():
    reports, summary, rejection_rate = run_oracle_suite(cases=20, seed=314)
    assert summary["cases"] == 20
    assert summary["comparisons"] == 60
    assert summary["passes"] == 60
    assert summary["worst_rel_diff"] <= 1e-7
    assert summary["seed"] == 314
    assert 0.0 <= rejection_rate < 1.0


def test_suite_outputs(tmp_path):
    reports, summary, _ = run_oracle_suite(cases=3, seed=1)
    csv_path = tmp_path / "cases.csv"
    json_path = tmp_path / "summary.json"
    write_suite_outputs(reports, summary, csv_path=csv_path, json_path=json_path)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "quantity,closed_form,brute_force,abs_diff,rel_diff,pass"
    assert len(lines) == 1 + len(reports)
    loaded = json.loads(json_path.read_text())
    assert loaded["passes"] == summary["passes"]


def test_csv_text_shape():
    reports = [OracleReport.compare("alpha", 1.0, 1.0)]
    text = reports_to_csv_text(reports)
    assert text.endswith("\n")
    assert "alpha" in text


def test_summary_shape():
    summary = summarize_reports([OracleReport.compare("q", 2.0, 2.0)], seed=9, cases=1)
    assert summary == {
        "cases": 1,
        "comparisons": 1,
        "passes": 1,
        "worst_rel_diff": 0.0,
        "seed": 9,
    }
