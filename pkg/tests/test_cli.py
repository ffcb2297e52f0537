import json
import filecmp
import shutil
from pathlib import Path

import pytest

from sensegraph.cli import main

FIXTURE = Path(__file__).parent / "data" / "fixture"
GOLDEN = Path(__file__).parent / "data" / "golden"
CONFIG = FIXTURE / "config.ini"


def run_all(tmp_path):
    out = tmp_path / "out"
    rc = main(["all", "--config", str(CONFIG), "--out", str(out)])
    assert rc == 0
    return out


def relative_files(root):
    return sorted(p.relative_to(root) for p in root.rglob("*") if p.is_file())


def test_all_matches_golden(tmp_path):
    out = run_all(tmp_path)
    golden_files = relative_files(GOLDEN)
    produced = [p for p in relative_files(out) if p.name != "manifest.json"]
    assert produced == golden_files
    for rel in golden_files:
        assert (out / rel).read_bytes() == (GOLDEN / rel).read_bytes(), rel


def test_manifest_inventory_and_node_bound(tmp_path):
    out = run_all(tmp_path)
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config_sha256"]
    assert len(manifest["inputs"]) == 3
    listed = sorted(manifest["artifacts"])
    on_disk = sorted(str(p) for p in relative_files(out) if p.name != "manifest.json")
    assert listed == on_disk
    counts = manifest["graphs"]["trump"]
    assert set(counts) == {"1980", "1990", "2000"}
    for entry in counts.values():
        assert 1 <= entry["nodes"] <= 37


def test_two_runs_byte_identical(tmp_path):
    out_a = run_all(tmp_path / "a")
    out_b = run_all(tmp_path / "b")
    for rel in relative_files(out_a):
        if rel.name == "manifest.json":
            continue
        assert (out_a / rel).read_bytes() == (out_b / rel).read_bytes(), rel


def test_staged_run_matches_all(tmp_path):
    out_all = run_all(tmp_path / "all")
    out = tmp_path / "staged" / "out"
    for stage in ("build", "cluster", "align", "distribute", "timeseries", "export"):
        rc = main([stage, "--config", str(CONFIG), "--out", str(out)])
        assert rc == 0
    for rel in relative_files(out_all):
        if rel.name == "manifest.json":
            continue
        assert (out / rel).read_bytes() == (out_all / rel).read_bytes(), rel


def test_validate_ok(capsys):
    rc = main(["validate", "--config", str(CONFIG)])
    assert rc == 0
    assert capsys.readouterr().out.startswith("ok: ")


def write_config(tmp_path, neighbors="neighbors_{slice}.jsonl", targets="w", extra_run=""):
    cfg = tmp_path / "config.ini"
    cfg.write_text(
        f"[run]\ntargets = {targets}\n" + extra_run +
        "\n[slices]\nlabels = 1980\n\n[inputs]\nneighbors = " + neighbors + "\n"
    )
    return cfg


def test_validate_rejects_self_neighbor(tmp_path, capsys):
    record = {"slice": "1980", "word": "w", "dist": [["w", 0.9]], "sub": []}
    (tmp_path / "neighbors_1980.jsonl").write_text(json.dumps(record) + "\n")
    cfg = write_config(tmp_path)
    rc = main(["validate", "--config", str(cfg)])
    assert rc == 5
    err = capsys.readouterr().err
    assert "invalid data" in err and ":1:" in err


def test_missing_config_exit_code(tmp_path, capsys):
    rc = main(["validate", "--config", str(tmp_path / "absent.ini")])
    assert rc == 4
    assert "missing input" in capsys.readouterr().err


def test_missing_neighbors_exit_code(tmp_path, capsys):
    cfg = write_config(tmp_path, neighbors="nothere_{slice}.jsonl")
    rc = main(["validate", "--config", str(cfg)])
    assert rc == 4
    assert "missing input" in capsys.readouterr().err


def test_bad_strategy_exit_code(tmp_path, capsys):
    (tmp_path / "neighbors_1980.jsonl").write_text("")
    cfg = write_config(tmp_path, extra_run="strategy = bogus\n")
    rc = main(["all", "--config", str(cfg)])
    assert rc == 3
    assert "config error" in capsys.readouterr().err


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_config_env_fallback(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SENSEGRAPH_CONFIG", str(CONFIG))
    rc = main(["validate"])
    assert rc == 0
    assert capsys.readouterr().out.startswith("ok: ")


def test_no_config_anywhere(monkeypatch, capsys):
    monkeypatch.delenv("SENSEGRAPH_CONFIG", raising=False)
    rc = main(["validate"])
    assert rc == 3
    assert "config error" in capsys.readouterr().err


def test_synth_regenerates_fixture(tmp_path):
    rc = main(["synth", "--scenario", str(FIXTURE / "scenario.ini"), "--out", str(tmp_path)])
    assert rc == 0
    for label in ("1980", "1990", "2000"):
        name = f"neighbors_{label}.jsonl"
        assert filecmp.cmp(tmp_path / name, FIXTURE / name, shallow=False), name


def test_empty_target_warns_but_builds(tmp_path, capsys):
    shutil.copy(FIXTURE / "neighbors_1980.jsonl", tmp_path / "neighbors_1980.jsonl")
    cfg = write_config(tmp_path, targets="ghost", extra_run="out = out\n")
    rc = main(["build", "--config", str(cfg)])
    assert rc == 0
    assert "no neighbors" in capsys.readouterr().err
    graph = json.loads((tmp_path / "out" / "graphs" / "ghost" / "1980.json").read_text())
    assert [n["lemma"] for n in graph["nodes"]] == ["ghost"]
