from __future__ import annotations

import csv
import json
import subprocess
import sys

import jsonschema
import pytest

from turanlab.cli import main
from turanlab.constructions import KBipartite, build
from turanlab.graph import canonical_form, from_graph6, to_graph6
from turanlab.reports import (
    CONSTRUCT_SCHEMA,
    COUNT_SCHEMA,
    REPORT_SCHEMA,
    VERIFY_SCHEMA,
    ResultCache,
    config_key,
    stable_view,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# count


@pytest.mark.parametrize(
    "g6, flags, copies",
    [
        (to_graph6(build(KBipartite(2, 4))), ["--cycle", "4"], 6),
        (to_graph6(build(KBipartite(3, 5))), ["--biclique", "3", "3"], 10),
        ("Cr", ["--cycle", "3"], 0),
        ("Cr", ["--pattern", "cycle:4"], 1),
    ],
)
def test_count(capsys, g6, flags, copies):
    code, out, _ = run(capsys, "count", g6, *flags)
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, COUNT_SCHEMA)
    assert data["copies"] == copies


def test_count_file(capsys, tmp_path):
    f = tmp_path / "in.g6"
    f.write_text("Cr\n\nC~\n")
    code, out, _ = run(capsys, "count", str(f), "--cycle", "4")
    assert code == 0
    assert [json.loads(line)["copies"] for line in out.splitlines()] == [1, 3]


def test_count_parse_error_names_offset(capsys, tmp_path):
    code, _, err = run(capsys, "count", "C!", "--cycle", "3")
    assert code == 2 and "byte offset 1" in err
    f = tmp_path / "bad.g6"
    f.write_text("Cr\nBx\n")
    code, _, err = run(capsys, "count", str(f), "--cycle", "3")
    assert code == 2 and ":2:" in err and "byte offset" in err


def test_count_bad_pattern_is_input_error(capsys):
    assert run(capsys, "count", "Cr", "--cycle", "2")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["count", "Cr", "--pattern", "wheel:5"])
    assert info.value.code == 2


# construct


def test_construct_augmented_check(capsys):
    code, out, _ = run(capsys, "construct", "thm3", "--n", "8", "--check")
    assert code == 0
    g6, payload = out.splitlines()
    data = json.loads(payload)
    jsonschema.validate(data, CONSTRUCT_SCHEMA)
    assert data["graph6"] == g6
    assert data["check"] == {"c6_free": True, "c4_count": 17, "formula": 17, "pass": True}


def test_construct_kbip(capsys):
    code, out, _ = run(capsys, "construct", "kbip", "--a", "3", "--b", "4")
    assert code == 0
    assert canonical_form(from_graph6(out.strip())) == canonical_form(build(KBipartite(3, 4)))


def test_construct_split_join_check(capsys):
    code, out, _ = run(
        capsys, "construct", "thm4", "--n", "10", "--s", "3", "--clique-mask", "0", "--h-edge", "false", "--check"
    )
    assert code == 0
    check = json.loads(out.splitlines()[1])["check"]
    assert check["contains_K3,7"] and check["c8_free"] and check["k33_count"] == 35


def test_construct_edge_list(capsys):
    code, out, _ = run(capsys, "construct", "star", "--k", "3", "--emit", "edge-list")
    assert code == 0
    assert out.splitlines() == ["3 2", "0 1", "0 2"]


def test_construct_errors(capsys):
    assert run(capsys, "construct", "thm3", "--n", "5")[0] == 2
    assert run(capsys, "construct", "thm4", "--n", "10")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["construct", "thm4", "--n", "10", "--s", "3", "--h-edge", "maybe"])
    assert info.value.code == 2


# search


def test_search_c6_over_c8_free_example(capsys, tmp_path, cache_dir):
    code, out, _ = run(
        capsys, "search", "--n", "7", "--target", "cycle:6", "--forbid", "cycle:8", "--bipartite", "--out", str(tmp_path)
    )
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["computed"]["max_copies"] == 24
    assert data["verdicts"]["matches_formula"] and data["formula"]["value"] == 24
    lines = open(data["graph6_file"]).read().split()
    assert len(lines) == 1
    assert canonical_form(from_graph6(lines[0])) == canonical_form(build(KBipartite(3, 4)))


def test_search_cache_hit_does_no_work(capsys, tmp_path, cache_dir):
    argv = ["search", "--n", "6", "--target", "cycle:4", "--forbid", "cycle:6", "--out", str(tmp_path)]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    first = json.loads(first)
    assert first["cache_hit"] is False and first["explored_this_run"] > 0
    assert len(list(cache_dir.iterdir())) == 1

    code, second, _ = run(capsys, *argv)
    second = json.loads(second)
    assert second["cache_hit"] is True and second["explored_this_run"] == 0
    assert stable_view(first) == stable_view(second)
    assert first["timestamp"] == second["timestamp"]  # stored report is returned verbatim

    code, third, _ = run(capsys, *argv, "--no-cache")
    assert json.loads(third)["cache_hit"] is False


def test_cache_key_covers_semantics():
    base = {"n": 6, "target": "cycle:4", "forbidden": ["cycle:6"], "mode": "general", "node_budget": None}
    keys = {config_key("search", base)}
    for field, value in [("n", 7), ("target", "cycle:5"), ("forbidden", []), ("mode", "bipartite"), ("node_budget", 9)]:
        keys.add(config_key("search", {**base, field: value}))
    assert len(keys) == 6


def test_cache_store_round_trip(tmp_path):
    cache = ResultCache(tmp_path / "c")
    assert cache.get("k") is None
    cache.put("k", "{}")
    assert cache.get("k") == "{}"


def test_reruns_are_identical_except_timing(capsys, tmp_path, cache_dir):
    argv = ["search", "--n", "6", "--target", "cycle:4", "--forbid", "cycle:6", "--no-cache", "--out", str(tmp_path)]
    a = json.loads(run(capsys, *argv)[1])
    b = json.loads(run(capsys, *argv)[1])
    for d in (a, b):
        d.pop("timestamp")
        d.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_search_general_value(capsys, tmp_path, cache_dir):
    code, out, _ = run(capsys, "search", "--n", "5", "--target", "cycle:4", "--forbid", "cycle:6", "--out", str(tmp_path))
    assert code == 0
    assert json.loads(out)["computed"]["max_copies"] == 15


def test_search_cap_exceeded(capsys, cache_dir):
    code, _, err = run(capsys, "search", "--n", "13", "--target", "cycle:4", "--forbid", "cycle:6")
    assert code == 3 and "cap exceeded" in err


def test_search_budget_flags_lower_bound(capsys, tmp_path, cache_dir):
    argv = ["search", "--n", "8", "--target", "cycle:4", "--forbid", "cycle:6", "--budget", "20", "--out", str(tmp_path)]
    data = json.loads(run(capsys, *argv)[1])
    assert data["verdicts"]["lower_bound_only"] is True
    assert data["computed"]["explored"] == 20


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["search", "--n", "5", "--target", "cycle:4", "--bogus"])
    assert info.value.code == 2


# verify


def test_verify_bipartite_c4_range(capsys, tmp_path):
    code, out, err = run(capsys, "verify", "--theorem", "1", "--n-range", "4..9", "--out", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, VERIFY_SCHEMA)
    assert data["summary"] == "PASS 6/6"
    assert "PASS 6/6" in err
    rows = list(csv.DictReader(open(data["csv"])))
    assert [int(r["n"]) for r in rows] == list(range(4, 10))
    assert all(r["formula"] == r["computed"] and r["match"] == "True" for r in rows)


def test_verify_c4_vertex_bound(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--lemma1", "--s-list", "2,3", "--n-max", "7", "--out", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    assert data["summary"] == "PASS 2/2"
    assert all(r["verdicts"]["violations"] == 0 for r in data["reports"])


def test_verify_family(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--thm4-family", "--s", "3", "--n-max", "14", "--out", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    assert data["summary"] == "PASS 112/112"
    assert len(list(csv.DictReader(open(data["csv"])))) == 112


def test_verify_failure_exits_1(capsys, tmp_path, monkeypatch):
    import turanlab.constructions as cons

    real = cons.formula_value
    monkeypatch.setattr(cons, "formula_value", lambda f: real(f) + 1)
    code, out, err = run(capsys, "verify", "--theorem", "1", "--n-range", "4..5", "--out", str(tmp_path))
    assert code == 1
    assert json.loads(out)["summary"].startswith("FAIL")
    assert "FAIL" in err


def test_verify_family_reports_deviations(capsys, tmp_path):
    # s = 2 lies outside the family statement: both optional edges add two K_{2,2} copies,
    # reported with witnesses, so the sweep still passes
    code, out, _ = run(capsys, "verify", "--thm4-family", "--s", "2", "--n-max", "7", "--out", str(tmp_path))
    data = json.loads(out)
    assert code == 0
    assert any(r["computed"]["count_deviations"] for r in data["reports"])


def test_verify_input_errors(capsys, tmp_path):
    assert run(capsys, "verify", "--theorem", "1", "--out", str(tmp_path))[0] == 2
    assert run(capsys, "verify", "--lemma1", "--s-list", "2", "--n-max", "9", "--out", str(tmp_path))[0] == 3
    assert run(capsys, "verify", "--theorem", "1", "--n-range", "4..15", "--out", str(tmp_path))[0] == 3
    with pytest.raises(SystemExit) as info:
        main(["verify", "--theorem", "3", "--n-range", "4..5"])
    assert info.value.code == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "turanlab", "count", "Cr", "--cycle", "4"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout) == {"copies": 1, "n": 4, "pattern": "cycle:4"}
