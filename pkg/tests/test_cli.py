import json
import subprocess
import sys

import pytest

from gyrolab.cli import run
from gyrolab.groups import cyclic_group, klein_group
from gyrolab.search import _all_loops
from gyrolab.table import write_table


@pytest.fixture
def files(tmp_path, G8):
    paths = {}
    for name, t in {"z4": cyclic_group(4), "k4": klein_group(), "g8": G8.table}.items():
        paths[name] = str(tmp_path / f"{name}.gyt")
        write_table(paths[name], t)
    bad = next(t for t in _all_loops(5) if t.op(1, 1) == 0)
    paths["bad5"] = str(tmp_path / "bad5.gyt")
    write_table(paths["bad5"], bad)
    paths["junk"] = str(tmp_path / "junk.gyt")
    (tmp_path / "junk.gyt").write_text("2\n0 1\n1 x\n")
    paths["nonloop"] = str(tmp_path / "nonloop.gyt")
    (tmp_path / "nonloop.gyt").write_text("2\n0 1\n1 1\n")
    return paths


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify(capsys, files):
    code, out, _ = call(capsys, "verify", files["z4"])
    assert code == 0 and out.strip() == "gyrogroup: yes, group: yes"
    code, out, _ = call(capsys, "verify", files["g8"])
    assert code == 0 and "group: no" in out


def test_verify_failures(capsys, files):
    code, out, _ = call(capsys, "verify", files["bad5"], "--json")
    d = json.loads(out)
    assert code == 1 and d["loop"] and not d["gyrogroup"] and d["violations"]
    code, out, _ = call(capsys, "--json", "verify", files["nonloop"])
    assert code == 1 and json.loads(out)["loop"] is False


def test_usage_errors(capsys, files, tmp_path):
    code, _, err = call(capsys, "verify", str(tmp_path / "missing.gyt"))
    assert code == 2 and "cannot read" in err
    code, _, err = call(capsys, "verify", files["junk"])
    assert code == 2 and "line 3" in err
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys)[0] == 2
    assert call(capsys, "search", "--order", "9")[0] == 2
    assert call(capsys, "search", "--order", "4", "--out", files["z4"])[0] == 2
    assert call(capsys, "quotient", files["z4"], "--normal", "0,a")[0] == 2
    assert call(capsys, "quotient", files["z4"], "--normal", "0,7")[0] == 2
    assert call(capsys, "moebius", "--radius", "1.2")[0] == 2
    assert call(capsys, "check", "lagrange", files["g8"], "--bound", "4")[0] == 2


def test_iso(capsys, files):
    code, out, _ = call(capsys, "iso", files["z4"], files["k4"])
    assert code == 1 and out.strip() == "not isomorphic: order profiles differ"
    code, out, _ = call(capsys, "iso", files["z4"], files["z4"], "--json")
    assert code == 0 and json.loads(out) == {"isomorphic": True, "map": [0, 1, 2, 3]}


def test_check(capsys, files):
    code, out, _ = call(capsys, "check", "lagrange", files["g8"], "--json")
    d = json.loads(out)
    assert code == 0 and d["holds"] and all(e["divides"] for e in d["evidence"])
    assert call(capsys, "check", "wcp", files["z4"])[0] == 0
    assert call(capsys, "check", "scp", files["g8"])[0] == 0
    assert call(capsys, "check", "gyrocommutative", files["k4"])[0] == 0
    code, out, _ = call(capsys, "check", "structure", files["g8"], "--json")
    assert code == 0 and len(json.loads(out)["laws"]) == 4


def test_analyze(capsys, files):
    code, out, _ = call(capsys, "analyze", files["g8"], "--json")
    d = json.loads(out)
    assert code == 0
    assert list(d)[:5] == ["order", "element_orders", "subgyrogroups", "flags", "classification_notes"]
    assert d["normal_subgroup_witness"] is not None
    code, out, _ = call(capsys, "analyze", files["z4"])
    assert code == 0 and "p2-group" in out


def test_quotient(capsys, files):
    code, out, _ = call(capsys, "quotient", files["z4"], "--normal", "0,2")
    assert code == 0
    assert out.splitlines() == ["# projection [0, 1, 0, 1]", "2", "0 1", "1 0"]
    code, out, _ = call(capsys, "quotient", files["z4"], "--normal", "0,1", "--json")
    assert code == 1 and json.loads(out)["is_subgyrogroup"] is False


def test_search_writes_corpus(capsys, tmp_path):
    out_dir = tmp_path / "c4"
    code, out, _ = call(capsys, "search", "--order", "4", "--out", str(out_dir), "--jobs", "1")
    assert code == 0 and "2 classes" in out
    assert sorted(p.name for p in out_dir.iterdir()) == ["g4_0.gyt", "g4_1.gyt", "manifest.json"]


def test_search_budget_exhausted(capsys):
    code, out, _ = call(capsys, "search", "--order", "8", "--budget", "10", "--jobs", "1", "--json")
    assert code == 1 and json.loads(out)["complete"] is False


def test_moebius(capsys):
    code, out, _ = call(capsys, "moebius", "--samples", "2000", "--json")
    d = json.loads(out)
    assert code == 0 and d["pass"] and d["samples"] == 2000
    code, out, _ = call(capsys, "moebius", "--samples", "2000", "--corrupt")
    assert code == 1 and "FAIL" in out


def test_json_is_stable(capsys, files):
    first = call(capsys, "analyze", files["g8"], "--json")[1]
    assert call(capsys, "analyze", files["g8"], "--json")[1] == first


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "gyrolab", "verify", files["z4"]], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "gyrogroup: yes" in proc.stdout
