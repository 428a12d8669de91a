import json
import logging

import pytest

from dessins import cli
from dessins.report import cache_file


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "A5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert set(doc) >= {"schema_version", "header", "group", "census", "t_systems", "universal_cover",
                        "universal_cover_orbits"}
    assert doc["census"]["r"] == 19
    assert doc["census"]["phi2"] == "2280"
    assert doc["group"]["order"] == "60"
    assert "time" not in json.dumps(doc["header"])


def test_formula(capsys):
    code, out, _ = run(capsys, "formula", "rL2p", "13", "--format", "text")
    assert (code, out.strip()) == (0, "495")
    code, out, _ = run(capsys, "formula", "rSz", "3")
    assert json.loads(out)["formula"]["value"] == "9534"
    code, out, _ = run(capsys, "formula", "rC", "12", "--format", "csv")
    assert out.splitlines() == ["formula,param,value", "rC,12,24"]


def test_verify_d7(capsys):
    code, out, _ = run(capsys, "verify", "D7")
    assert code == 0
    doc = json.loads(out)
    assert doc["verify"]["ok"] is True
    statuses = {c["check"]: c["status"] for c in doc["verify"]["checks"]}
    assert statuses["ucover-vs-closed-form"] == "pass"
    assert statuses["closed-form-r"] == "pass"
    assert "fail" not in statuses.values()


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "closed_form_r", lambda desc: 4)
    code, out, _ = run(capsys, "verify", "D7", "--format", "text")
    assert code == 3
    assert "FAIL closed-form-r" in out


@pytest.mark.parametrize("argv", [["census", "X9"], ["census", "PSL2_6"], ["census"], ["frobnicate", "A5"],
                                  ["formula", "rL2p", "nine"], ["formula", "rSz", "4"],
                                  ["census", "A5", "--threads", "0"]])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 2
    assert out == ""
    payload = json.loads(err)["error"]
    assert payload["exit_code"] == 2 and payload["message"]


def test_computation_error(capsys):
    code, _, err = run(capsys, "census", "S8", "--format", "json")
    assert code == 1
    assert json.loads(err)["error"]["type"] == "CapExceeded"


def test_text_errors_are_plain(capsys):
    code, _, err = run(capsys, "census", "X9", "--format", "text")
    assert code == 2 and err.startswith("dessins: error:")


def test_csv(capsys):
    code, out, _ = run(capsys, "census", "A5", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "class_id,l,m,n,genus,commutator_order,orbit_id"
    assert len(lines) == 20
    assert {line.split(",")[-1] for line in lines[1:]} == {"0", "1"}


def test_output_identical_across_runs_and_threads(capsys):
    outs = [run(capsys, "tsystems", "PSL2_7", "--threads", str(t))[1] for t in (1, 1, 4)]
    assert outs[0] == outs[1] == outs[2]


def test_cache_round_trip_and_corruption(capsys, tmp_path, caplog):
    fresh = run(capsys, "census", "PSL2_7")[1]
    first = run(capsys, "census", "PSL2_7", "--cache-dir", str(tmp_path))[1]
    path = cache_file(tmp_path, "PSL2_7")
    assert path.exists()
    second = run(capsys, "census", "PSL2_7", "--cache-dir", str(tmp_path))[1]
    assert fresh == first == second
    path.write_text(path.read_text()[:500])
    with caplog.at_level(logging.WARNING):
        third = run(capsys, "census", "PSL2_7", "--cache-dir", str(tmp_path))[1]
    assert third == fresh
    assert any("corrupt cache" in r.message for r in caplog.records)
    # a tampered Moebius value is caught by the identity check
    data = json.loads(path.read_text())
    data["lattice"]["subgroups"][0]["mu"] += 1
    path.write_text(json.dumps(data))
    assert run(capsys, "census", "PSL2_7", "--cache-dir", str(tmp_path))[1] == fresh


def test_cache_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("DESSIN_CACHE_DIR", str(tmp_path))
    run(capsys, "mobius", "A5")
    assert cache_file(tmp_path, "A5").exists()


def test_mobius(capsys):
    code, out, _ = run(capsys, "mobius", "A5")
    m = json.loads(out)["mobius"]
    assert m["subgroups"] == 59 and m["phi2"] == "2280"
    assert sorted(c["index"] for c in m["maximal_classes"]) == [5, 6, 10]
    assert sum(r["class_size"] for r in m["classes"]) == 59


def test_ucover(capsys):
    code, out, _ = run(capsys, "ucover", "A5", "--include-ucover-orbits")
    doc = json.loads(out)
    assert code == 0
    assert doc["universal_cover"]["order"] == str(60 ** 19)
    assert doc["universal_cover"]["type"] == [30, 30, 30]
    assert sorted(int(u["order"]) for u in doc["universal_cover_orbits"]) == [60 ** 9, 60 ** 10]
    code, out, _ = run(capsys, "ucover", "A5", "--orbit", "1", "--format", "text")
    assert out.startswith("orbit 1:")
    code, _, _ = run(capsys, "ucover", "A5", "--orbit", "5")
    assert code == 2


def test_large_cover_is_gated(capsys):
    code, out, _ = run(capsys, "ucover", "PSL2_7")
    doc = json.loads(out)
    assert code == 0 and doc["universal_cover"] is None
    assert "--attempt-l27-ucover" in doc["universal_cover_note"]
    code, out, _ = run(capsys, "ucover", "PSL2_7", "--attempt-l27-ucover", "--time-budget", "0")
    doc = json.loads(out)
    assert code == 0 and doc["universal_cover"] is None
    assert doc["universal_cover_note"].startswith("skipped")
