import json
import subprocess
import sys

import pytest

from dtpt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_macmahon_json(capsys):
    code, out, _ = run(capsys, "macmahon", "--order", "8", "--format", "json")
    assert code == 0
    assert json.loads(out)["coeffs"] == [1, 1, 3, 6, 13, 24, 48, 86, 160]


def test_macmahon_text(capsys):
    code, out, _ = run(capsys, "macmahon", "--order", "3")
    assert code == 0 and "coeffs: [1, 1, 3, 6]" in out


@pytest.mark.parametrize("legs,status", [(1, "pass"), (2, "consistency-only"), (3, "consistency-only")])
def test_dt_series(capsys, legs, status):
    code, out, _ = run(capsys, "dt-series", "--legs", str(legs), "--order", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["pt_status"] == status
    if legs == 1:
        assert data["pt_predicted"] == [1, 1, 1, 1, 1]


def test_dt_series_no_legs(capsys):
    code, out, _ = run(capsys, "dt-series", "--legs", "0", "--order", "4", "--format", "json")
    assert json.loads(out)["dt"] == [1, 1, 3, 6, 13]
    assert "pt_predicted" not in json.loads(out)


@pytest.mark.parametrize("target", ["punctual", "eulerpt", "main", "proof2"])
def test_verify_targets(capsys, target):
    code, out, _ = run(capsys, "verify", target, "--order", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["ok"]


def test_verify_csv_and_series(capsys, tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"ZI": [1, 2, 5, 12], "ZP": [1, 1, 1, 1]}))
    code, out, _ = run(capsys, "verify", "main", "--order", "3", "--series", str(p), "--format", "csv")
    assert code == 1
    assert "main-supplied-0" in out and ",fail" in out


def test_verify_bad_config(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"nope": 1}))
    code, _, err = run(capsys, "verify", "punctual", "--config", str(p))
    assert code == 2 and "unknown config keys" in err


def test_verify_order_guard(capsys):
    code, _, err = run(capsys, "verify", "punctual", "--order", "20")
    assert code == 2 and "order" in err


def test_gitwall_scan(capsys, tmp_path):
    p = tmp_path / "scn.json"
    p.write_text(json.dumps({"r": 2, "m": 10, "c0": "1/4", "c1": "3/4",
                             "config": [{"family": 1, "chiF": 0, "chiF_sub": 3}]}))
    code, out, _ = run(capsys, "gitwall", "scan", "--scenario", str(p))
    assert code == 0
    assert json.loads(out)["count"] == 1


def test_gitwall_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "gitwall", "scan", "--scenario", str(tmp_path / "none.json"))
    assert code == 2 and err


def test_hallfq_verify(capsys):
    code, out, _ = run(capsys, "hallfq", "verify", "--suite", "inverse", "--degree", "3")
    assert code == 0 and "pass" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dtpt", "macmahon", "--order", "4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert "[1, 1, 3, 6, 13]" in res.stdout
