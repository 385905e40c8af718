import csv
import io
import json

import pytest

from eisenlab.characters import DirichletCharacter
from eisenlab.scanner import (CSV_COLUMNS, AdmissibleConfig, ScanConfig, document, emit, enumerate_admissible,
                              load_document, render, run_config, scan)


def test_enumerate_11():
    cfgs = enumerate_admissible(11)
    assert [(c.f, c.Mbar, c.Lbar) for c in cfgs] == [(1, 11, 1)]


def test_enumerate_9():
    cfgs = enumerate_admissible(9)
    assert sorted((c.f, c.Mbar, c.Lbar) for c in cfgs) == [(1, 3, 1), (1, 3, 3), (3, 1, 1)]


def test_enumerate_15_and_invariants():
    cfgs = enumerate_admissible(15)
    assert all(c.chi.is_trivial() for c in cfgs)
    assert sorted((c.Mbar, c.Lbar) for c in cfgs) == [(3, 1), (3, 5), (5, 1), (5, 3), (15, 1)]
    for N in (9, 15, 25, 45, 63, 99, 225):
        for c in enumerate_admissible(N):
            assert N % c.level == 0 and c.M > 1


def test_enumerate_filters():
    # characters of order 4 mod 5 do not reduce into F_7
    assert len(enumerate_admissible(25, q=7)) < len(enumerate_admissible(25, q=5))
    only = enumerate_admissible(25, chi_filter=(5, 0))
    assert only and all(c.f == 5 for c in only)
    with pytest.raises(ValueError):
        enumerate_admissible(10)


def test_run_config_report_shape():
    cfg = enumerate_admissible(11)[0]
    rep = run_config(cfg, 11, 40, 11)
    assert rep["status"] == "pass"
    assert rep["cuspidal_order"] == 5 and rep["eisenstein_primes"] == [5]
    assert rep["timing"] is None
    assert len(rep["delta_divisor"]) == 2


def test_scan_deterministic_and_parallel():
    cfg = ScanConfig(45, 40, 13)
    a = render(scan(cfg), "json", cfg)
    b = render(scan(cfg), "json", cfg)
    c = render(scan(ScanConfig(45, 40, 13, jobs=3)), "json", cfg)
    assert a == b == c


def test_json_round_trip(tmp_path):
    cfg = ScanConfig(9, 100, 13)
    reports = scan(cfg)
    assert all(r["status"] == "pass" for r in reports)
    path = tmp_path / "out.json"
    emit(reports, "json", str(path), cfg)
    doc = load_document(str(path))
    assert doc == json.loads(json.dumps(document(cfg, reports)))
    assert doc["version"] == "1"


def test_csv_output():
    cfg = ScanConfig(11, 40, 11, fmt="csv")
    text = render(scan(cfg), "csv", cfg)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == CSV_COLUMNS
    summary = [r for r in rows if r["row"] == "summary"]
    assert summary[0]["eisenstein_primes"] == "5"
    assert len([r for r in rows if r["row"] == "cusp"]) == 2


def test_empty_document():
    cfg = ScanConfig(1, 10, 5)
    assert scan(cfg) == []
    doc = json.loads(render([], "json", cfg))
    assert doc["reports"] == []


def test_config_validation():
    with pytest.raises(ValueError):
        ScanConfig(11, 10, 11)
    with pytest.raises(ValueError):
        ScanConfig(12, 40, 11)
    with pytest.raises(ValueError):
        ScanConfig(11, 40, 11, fmt="xml")


def test_emit_reports_path(tmp_path):
    cfg = ScanConfig(11, 40, 11)
    with pytest.raises(OSError, match="missing"):
        emit([], "json", str(tmp_path / "missing" / "out.json"), cfg)


def test_errors_are_recorded_not_raised():
    rep = run_config(AdmissibleConfig(DirichletCharacter.trivial(), 1, 11), 11, 40, 11)
    assert rep["status"] == "fail"
    assert rep["errors"] and "M = 1" in rep["errors"][0]
