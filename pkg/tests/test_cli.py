import json

import pytest

from clickbound.cli import CSV_COLUMNS, _fmt, _fmt_pdark, main

FAST = ["--eta-max", "40", "--safety", "1.0",
        "--pdark-min-exp", "-8", "--pdark-max-exp", "-2",
        "--pdark-points", "4"]


def _read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, ln.split(","))) for ln in lines[1:]]
    return header, rows


def test_formatting_helpers():
    assert _fmt(None) == ""
    assert _fmt(True) == "true"
    assert _fmt(False) == "false"
    assert _fmt(0.1) == "0.10000000000000001"
    assert _fmt_pdark(-12.0) == "1e-12"
    assert _fmt_pdark(-1.5).startswith("0.0316")


def test_convert_matches_reduction(capsys):
    rc = main(["convert", "--l", "1", "--length", "1", "--tau", "1",
               "--k0", "5", "--alpha0-sq", "10", "--v-coh", "8",
               "--delta-l", "2", "--delta-length", "2"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "N = 10" in out
    assert "delta_phi = 10" in out
    assert "a = 1" in out
    assert "ideal_click_probability = 0.9999546" in out


def test_convert_validation_error(capsys):
    rc = main(["convert", "--l", "1", "--length", "1", "--tau", "1",
               "--k0", "0", "--alpha0-sq", "10", "--v-coh", "8"])
    assert rc == 1
    assert "k0" in capsys.readouterr().err


def test_bound_writes_schema_and_monotone_pmax(tmp_path):
    out = tmp_path / "res.csv"
    rc = main(["bound", "--n", "10", "--dphi", "1", "--aspect", "1",
               "--output", str(out)] + FAST)
    assert rc == 0
    header, rows = _read_csv(out)
    assert header == list(CSV_COLUMNS)
    assert len(rows) == 4
    assert all(r["status"] == "ok" for r in rows)
    pmax = [float(r["pmax"]) for r in rows]
    pdark = [float(r["pdark"]) for r in rows]
    assert pdark == sorted(pdark)
    assert pmax == sorted(pmax)
    assert rows[0]["pdark"] == "1e-8"
    assert rows[0]["config_id"] == "N10_dphi1_a1_phase0"
    assert float(rows[0]["w2_zero"]) > 0
    assert float(rows[0]["eta_max"]) == 40.0


def test_bound_json_output(tmp_path):
    out = tmp_path / "res.json"
    rc = main(["bound", "--n", "10", "--dphi", "1", "--aspect", "1",
               "--format", "json", "--output", str(out)] + FAST)
    assert rc == 0
    payload = json.loads(out.read_text())
    assert len(payload) == 4
    assert set(payload[0]) == set(CSV_COLUMNS)


def test_config_file_supplies_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("eta-max = 40\nsafety = 1.0\n"
                   "pdark-points = 3\npdark-min-exp = -6\n"
                   "pdark-max-exp = -2  # comment\n")
    out = tmp_path / "res.csv"
    rc = main(["bound", "--n", "10", "--dphi", "1", "--aspect", "1",
               "--pdark-points", "2",  # explicit flag wins over the file
               "--config-file", str(cfg), "--output", str(out)])
    assert rc == 0
    _, rows = _read_csv(out)
    assert len(rows) == 2
    assert float(rows[-1]["eta_max"]) == 40.0


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("not-a-flag = 3\n")
    rc = main(["bound", "--n", "10", "--dphi", "1", "--aspect", "1",
               "--config-file", str(cfg)])
    assert rc == 1
    assert "not-a-flag".replace("-", "_") in capsys.readouterr().err


def test_bound_rejects_bad_geometry(capsys):
    rc = main(["bound", "--n", "10", "--dphi", "1", "--aspect", "-1"])
    assert rc == 1
