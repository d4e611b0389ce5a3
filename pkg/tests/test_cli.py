from __future__ import annotations

import io
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from cochar.cli import load_schema, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(command, *argv):
    code, text = run(command, *argv, "--format", "json")
    doc = json.loads(text)
    jsonschema.validate(doc, load_schema(command))
    return code, doc


def test_roots():
    code, doc = run_json("roots", "G2")
    assert code == 0 and len(doc["roots"]) == 12 and doc["bad_primes"] == [2, 3]
    code, doc = run_json("roots", "A1")
    assert len(doc["roots"]) == 2
    code, doc = run_json("roots", "F4")
    assert code == 0


def test_orbits():
    code, doc = run_json("orbits", "G2")
    assert code == 0 and len(doc["orbits"]) == 5
    _, doc = run_json("orbits", "A2")
    assert len(doc["orbits"]) == 3
    _, doc = run_json("orbits", "G2", "--label", "G2")
    assert [o["diagram"] for o in doc["orbits"]] == [[2, 2]]


def test_subsystems():
    _, doc = run_json("subsystems", "F4", "--maximal")
    assert {s["name"] for s in doc["subsystems"]} == {"B4", "A1+C3", "A2+~A2"}
    _, doc = run_json("subsystems", "A1")
    assert all(s["levi"] or s["depth"] == 0 for s in doc["subsystems"])
    _, doc = run_json("subsystems", "E8", "--depth", "1")
    assert {"D8", "A1+E7"} <= {s["name"] for s in doc["subsystems"]}


def test_dagger():
    code, doc = run_json("dagger", "--embedding", "E6/F4-folding")
    assert code == 0 and len(doc["reports"]) == 16
    assert all(r["verdict"] != "INCONCLUSIVE" for r in doc["reports"])
    code, doc = run_json("dagger", "--embedding", "D4/G2-triality", "--orbit", "G2")
    assert code == 0 and doc["reports"][0]["forward_ok"]
    code, doc = run_json("dagger", "--embedding", "F4/levi-234", "--orbit", "0")
    [r] = doc["reports"]
    assert r["lambda_H"] == [0, 0, 0] and r["verdict"] != "INCONCLUSIVE"


def test_table1():
    code, doc = run_json("table1")
    assert code == 0
    pairs = [(r["G2"], r["F4"]) for r in doc["rows"]]
    assert pairs == [("1", "1"), ("A1", "A1~A1"), ("~A1", "~A2A1"), ("G2(a1)", "F4(a3)"), ("G2", "F4(a1)")]
    code, text = run("table1")
    assert "distinguished: yes" in text and "reductive rank 1" in text and "reference only" in text


@pytest.mark.parametrize(
    "command,argv,ncols",
    [
        ("roots", ["G2"], 4),
        ("orbits", ["F4"], 6),
        ("subsystems", ["F4"], 7),
        ("dagger", ["--embedding", "D4/G2-triality"], 10),
        ("table1", [], 7),
    ],
)
def test_tsv_column_counts(command, argv, ncols):
    code, text = run(command, *argv, "--format", "tsv")
    assert code == 0
    rows = text.rstrip("\n").split("\n")
    assert len(rows) > 1
    assert {len(r.split("\t")) for r in rows} == {ncols}


def test_rejects_bad_input_before_computing():
    assert run("orbits", "Z9")[0] == 2
    assert run("orbits", "G2", "--label", "G2;rm -rf")[0] == 2
    assert run("dagger", "--embedding", "F4/nonsense")[0] == 2
    assert run("dagger", "--embedding", "../etc")[0] == 2
    assert run("orbits", "G2", "--label", "E8")[0] == 2
    assert run("orbits", "G2", "--jobs", "0")[0] == 2
    with pytest.raises(SystemExit):
        main(["orbits", "G2", "--format", "xml"])


def test_cache_commands(tmp_path):
    d = str(tmp_path)
    assert run("orbits", "A3", "--cache-dir", d)[0] == 0
    code, doc = run_json("cache", "inspect", "--cache-dir", d)
    assert [e["system"] for e in doc["entries"]] == ["A3"]
    code, doc = run_json("cache", "clear", "--cache-dir", d)
    assert len(doc["removed"]) == 1
    _, doc = run_json("cache", "inspect", "--cache-dir", d)
    assert doc["entries"] == []


def test_orbits_cache_roundtrip_byte_identical(tmp_path):
    env = dict(os.environ, COCHAR_CACHE_DIR=str(tmp_path))
    cmd = [sys.executable, "-m", "cochar", "orbits", "E6", "--format", "json"]
    first = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout
    a, b = json.loads(first), json.loads(second)
    assert a["metadata"]["source"] == "computed" and b["metadata"]["source"] == "cache"
    a.pop("metadata"), b.pop("metadata")
    assert json.dumps(a, sort_keys=True, indent=2) == json.dumps(b, sort_keys=True, indent=2)
    assert first.replace('"computed"', '"cache"') == second
