import json

import pytest

from detquartic.cli import main


class TestAnalyze:
    def test_catalog_entry_json(self, capsys):
        rc = main(["analyze", "--entry", "(1,1,0)", "--json"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert (out["eta"], out["rho"], out["sigma"]) == (1, 1, 0)

    def test_missing_input_is_input_error(self, capsys):
        assert main(["analyze"]) == 1

    def test_unknown_entry_is_input_error(self, capsys):
        assert main(["analyze", "--entry", "(42,0,0)"]) == 1

    def test_bad_file_is_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["analyze", str(bad)]) == 1


class TestVerifyCatalog:
    def test_single_entry(self, capsys):
        rc = main(["verify-catalog", "--entry", "(0,0,0)", "--lines", "40", "--json"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["verified"] == out["total"] == 1
        assert out["entries"][0]["ok"]

    def test_fixture_entry_rejected(self, capsys):
        assert main(["verify-catalog", "--entry", "line/(rank2-pair)"]) == 1


class TestRealify:
    def test_prints_eight_by_eight(self, capsys):
        rc = main(["realify", "--entry", "(0,0,0)"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["size"] == 8
        assert out["square_identity"]
        assert len(out["coeffs"]) == 4 and len(out["coeffs"][0]) == 8


class TestHyperbolicity:
    def test_catalog_entry(self, capsys):
        rc = main(["hyperbolicity", "--entry", "(2,2,0)", "--lines", "50", "--json"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["fraction_real"] == 1.0


class TestX2Check:
    def test_samples_pass(self, capsys):
        rc = main(["x2-check", "--budget", "6", "--json"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["ok"] and out["samples"] == 6


class TestSearch:
    def test_cheap_target(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        rc = main(["search", "1,1,0", "--budget", "6", "--seed", "0", "--json"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert len(out["found"]) >= 1
        assert (tmp_path / "found.ndjson").exists()
        assert (tmp_path / "tracker.json").exists()

    def test_bad_target(self, capsys):
        assert main(["search", "9,9,0", "--budget", "1"]) == 1
        assert main(["search", "nonsense"]) == 1


class TestExportSurface:
    def test_writes_obj(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        rc = main(["export-surface", "--entry", "(2,2,1)", "--resolution", "24"])
        assert rc == 0
        obj = tmp_path / "4.3_(2,2,1).obj"
        assert obj.exists()
        text = obj.read_text()
        assert text.splitlines()[1].startswith("v ")
        assert any(line.startswith("f ") for line in text.splitlines())
