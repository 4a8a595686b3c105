import csv
import io
import json

import pytest

from dtpt import harness
from dtpt.harness import (
    ANCHORS,
    SCHEMA,
    VerificationReport,
    gitwall_suite,
    hallfq_suite,
    load_config,
    localext_suite,
    run_all,
    verify_euler_pt_punctual,
    verify_main_theorem_series,
    verify_punctual_axis,
    verify_second_proof_series,
    wallcases_suite,
)
from dtpt.series import geometric_series, macmahon_euler_product, series_mul, series_pow

QUICK = {"N": 5, "suites": ["punctual", "eulerpt", "main", "localext"]}


@pytest.fixture(scope="module")
def full_report():
    return run_all()


def statuses(rep):
    return {c.id: c.status for c in rep.checks}


def test_full_run_passes_and_covers_every_anchor(full_report):
    assert full_report.ok
    assert full_report.anchors() == set(ANCHORS)
    assert all(s in ("pass", "consistency-only") for s in statuses(full_report).values())


def test_full_run_has_timings(full_report):
    assert set(full_report.timing) >= {"punctual", "main"}


@pytest.mark.parametrize("N", [0, 1, 8])
def test_punctual_axis(N):
    rep = verify_punctual_axis(N)
    assert rep.ok and len(rep.checks) == 2
    one_leg = rep.checks[0].data["brute_force"]
    assert len(one_leg) == N + 1


def test_euler_pt_terms():
    rep = verify_euler_pt_punctual(6)
    terms = rep.checks[0].data
    assert [t["I_n"] for t in terms] == [1, 2, 5, 11, 24, 48, 96]
    assert all(t["ok"] for t in terms)


@pytest.mark.parametrize("eX", [0, 1, 2, -1])
def test_main_series_degree_zero(eX):
    rep = verify_main_theorem_series(eX, 4)
    assert rep.ok
    if eX >= 0:
        assert statuses(rep)["degree-zero-points"] == "pass"


def test_main_series_supplied_and_wrong():
    zp = [1, 1, 1, 1, 1]
    zi = series_pow(macmahon_euler_product(4), 1)
    good = {"ZI": [1, 2, 5, 11, 24], "ZP": zp}
    assert statuses(verify_main_theorem_series(1, 4, good))["main-supplied-series"] == "pass"
    bad = {"ZI": [1, 2, 5, 12, 24], "ZP": zp, "name": "perturbed"}
    rep = verify_main_theorem_series(1, 4, bad)
    assert not rep.ok
    assert rep.checks[-1].data["first_difference"] == 3
    serial = {"ZI": series_mul(zi, geometric_series(4)).to_json(), "ZP": zp}
    assert verify_main_theorem_series(1, 4, serial).ok


def test_second_proof_steps():
    rep = verify_second_proof_series(3)
    assert rep.ok
    assert any(c.status == "consistency-only" for c in rep.checks)
    assert verify_second_proof_series(0).ok


@pytest.mark.parametrize("suite", ["reineke", "inverse", "commutation", "limits", "associativity"])
def test_hall_suites(suite):
    assert hallfq_suite(suite, 3).ok


def test_other_suites():
    assert wallcases_suite().ok
    assert localext_suite(3).ok
    assert gitwall_suite().ok


def test_zero_order_run_passes():
    rep = run_all({"N": 0})
    assert rep.ok
    assert rep.anchors() == set(ANCHORS)


def test_guards():
    with pytest.raises(ValueError):
        verify_punctual_axis(9)
    with pytest.raises(ValueError):
        verify_euler_pt_punctual(-1)
    with pytest.raises(ValueError):
        verify_main_theorem_series(7, 2)
    with pytest.raises(ValueError):
        run_all({"suites": ["nonsense"]})
    with pytest.raises(ValueError):
        hallfq_suite("nonsense")


def test_report_validation():
    rep = VerificationReport("x")
    rep.add("a", "main-theorem", "pass")
    with pytest.raises(ValueError):
        rep.add("a", "main-theorem", "pass")
    with pytest.raises(ValueError):
        rep.add("b", "not-an-anchor", "pass")
    with pytest.raises(ValueError):
        rep.add("c", "main-theorem", "maybe")
    rep.add("d", "main-theorem", "fail")
    assert not rep.ok


def test_formats():
    rep = verify_punctual_axis(3)
    d = json.loads(rep.to_json())
    assert d["schema"] == SCHEMA and d["ok"] and "timing" in d
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["suite", "id", "anchor", "status"]
    assert len(rows) == 1 + len(rep.checks)
    text = rep.render("text")
    assert "punctual-one-leg" in text and "2 pass" in text
    with pytest.raises(ValueError):
        rep.render("xml")


def test_cache_does_not_change_results(tmp_path, monkeypatch):
    monkeypatch.setenv("DTPT_CACHE_DIR", str(tmp_path / "c"))
    cold = run_all(QUICK).to_json(with_timing=False)
    warm = run_all(QUICK).to_json(with_timing=False)
    assert cold == warm
    files = [p for p in (tmp_path / "c").rglob("*") if p.is_file()]
    assert files
    for p in files:
        p.write_text("{ not json")
    assert run_all(QUICK).to_json(with_timing=False) == cold
    monkeypatch.setenv("DTPT_NO_CACHE", "1")
    assert run_all(QUICK).to_json(with_timing=False) == cold


def test_load_config(tmp_path):
    assert load_config(None) == harness.DEFAULT_CONFIG
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"N": 3, "series": [{"ZI": [1, 2, 5], "ZP": [1, 1, 1]}]}))
    cfg = load_config(str(p))
    assert cfg["N"] == 3
    rep = run_all(dict(cfg, suites=["main"]))
    assert "main-supplied-0" in statuses(rep)
    p.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ValueError):
        load_config(str(p))
