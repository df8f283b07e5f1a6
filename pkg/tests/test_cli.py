from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gtopology.cli import RunConfig, main, parse_range
from gtopology.errors import ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_nat_max(capsys):
    code, out, _ = run(capsys, "analyze", "--scenario", "nat-max", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["summary"] == {"verdict": "discrete-on-probe"}
    assert rep["parameters"]["max_word_len"] == 4
    assert rep["provenance"]["config"]["const_window"] == list(range(16))


def test_analyze_shifts_text(capsys):
    code, out, _ = run(capsys, "analyze", "--scenario", "int-shifts-left")
    assert code == 0
    assert "non-discrete-witness at x=0" in out


def test_bad_config_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"scenario": "nat-max", "max_word_len": -1}))
    code, _, err = run(capsys, "analyze", "--config", str(bad))
    assert code == 2 and "max_word_len" in err


def test_probe_outside_window_exits_2(capsys):
    code, _, err = run(capsys, "analyze", "--scenario", "nat-max", "--probe", "0:40")
    assert code == 2 and "probe" in err


def test_budget_exits_3(tmp_path, capsys):
    cfg = tmp_path / "big.json"
    cfg.write_text(json.dumps({"scenario": "group-power", "family": {"kind": "group-shifts", "group": "S3", "n": 7}}))
    code, _, err = run(capsys, "analyze", "--config", str(cfg))
    assert code == 3 and "budget" in err


def test_special_writes_verified_sequence(tmp_path, capsys):
    out = tmp_path / "seq.json"
    code, _, _ = run(capsys, "special", "--scenario", "int-shifts", "--length", "24", "--format", "json", "--out", str(out))
    rep = json.loads(out.read_text())
    assert code == 0
    assert rep["verdict"]["ok"] and rep["sequence"]["verified"]
    assert len(rep["sequence"]["points"]) == 24


def test_special_window_too_small_exits_4(capsys):
    code, _, err = run(capsys, "special", "--scenario", "int-shifts", "--length", "24", "--search-window", "0:20")
    assert code == 4 and "step 6" in err


def test_open_singleton_is_not_open(capsys):
    code, out, _ = run(
        capsys, "open", "--scenario", "int-shifts", "--length", "4", "--set", '{"kind":"finite","points":[0]}', "--format", "json"
    )
    assert code == 0 and json.loads(out)["verdict"]["status"] == "not-open"


def test_separate(capsys):
    code, out, _ = run(
        capsys, "separate", "--scenario", "int-shifts", "--length", "12", "--depth", "6",
        "--a", '{"kind":"finite","points":[2]}', "--b", '{"kind":"finite","points":[7]}', "--format", "json",
    )
    rep = json.loads(out)
    assert code == 0 and rep["disjoint"] and len(rep["A"]) == 7


def test_separate_overlap_exits_2(capsys):
    code, _, _ = run(
        capsys, "separate", "--scenario", "int-shifts", "--length", "6",
        "--a", '{"kind":"finite","points":[2]}', "--b", '{"kind":"finite","points":[2]}',
    )
    assert code == 2


def test_catalog_single_scenario(capsys):
    code, out, _ = run(capsys, "catalog", "--scenario", "nat-max")
    assert code == 0 and "mismatches: 0" in out


def test_reports_are_byte_identical(capsys):
    argv = ("analyze", "--scenario", "finitary-perms", "--format", "json", "--max-word-len", "3", "--seed", "4")
    outs = {run(capsys, *argv)[1] for _ in range(2)}
    assert len(outs) == 1
    assert json.loads(outs.pop())["provenance"]["config"]["seed"] == 4


def test_config_round_trip():
    cfg = RunConfig.from_dict({"scenario": "int-shifts"})
    again = RunConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
    assert again == cfg
    assert cfg.length == 24 and cfg.search_window == (0, 4096)


def test_config_errors_name_the_field():
    with pytest.raises(ConfigError) as err:
        RunConfig.from_dict({"scenario": "nat-max", "bogus": 1})
    assert err.value.field == "bogus"
    with pytest.raises(ConfigError) as err:
        RunConfig.from_dict({"scenario": "nat-max", "format": "xml"})
    assert err.value.field == "format"


def test_parse_range():
    assert parse_range("2:5") == (2, 3, 4)
    assert parse_range("1,4,9") == (1, 4, 9)
    with pytest.raises(ConfigError):
        parse_range("a:b")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gtopology", "analyze", "--scenario", "nat-max", "--probe", "0:3"], capture_output=True, text=True)
    assert r.returncode == 0 and "discrete-on-probe" in r.stdout
