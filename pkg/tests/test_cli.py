from __future__ import annotations

import json

from sphertet.cli import EXIT_INVARIANT, EXIT_IO, EXIT_MISMATCH, EXIT_OK, main
from sphertet.records import read_records


def test_verify_one_family(capsys):
    assert main(["verify-families", "--family", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "family  3:" in out
    assert "identity=ok volume=ok domain=ok" in out
    assert "1/1 families verified" in out


def test_search_lambert_writes_records(tmp_path, capsys):
    assert main(["search-lambert", "--out", str(tmp_path)]) == EXIT_OK
    recs = read_records(tmp_path / "lambert.jsonl")
    assert len(recs) == 2
    assert {r.kind for r in recs} == {"lambert"}
    assert "scanned 1771 triples" in capsys.readouterr().out


def test_certify_with_lift(capsys):
    assert main(["certify", "--paper-example", "--lift", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "recheck" in out
    assert "n=5" in out


def test_certify_requires_a_task(capsys):
    assert main(["certify"]) == EXIT_MISMATCH


def test_catalog_export(tmp_path, capsys):
    assert main(["catalog", "--out", str(tmp_path)]) == EXIT_OK
    data = json.loads((tmp_path / "catalog.json").read_text())
    assert len(data["families"]["families"]) == 42
    assert len(data["coxeter"]) == 11


def test_triples_search(capsys):
    assert main(["search-quadruples", "--triples"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "nontrivial" in out


def test_missing_config_file_is_an_io_error(tmp_path, capsys):
    rc = main(["search-lambert", "--config", str(tmp_path / "nope.json")])
    assert rc == EXIT_IO


def test_bad_config_shape_is_an_invariant_error(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1,2]")
    assert main(["search-lambert", "--config", str(cfg)]) == EXIT_INVARIANT


def test_config_file_supplies_the_out_dir(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"out": str(tmp_path / "results")}))
    assert main(["catalog", "--config", str(cfg)]) == EXIT_OK
    assert (tmp_path / "results" / "catalog.json").exists()
