import io
import json
import subprocess
import sys

import pytest

from factorlab.cli import _stringify, run


def call(*argv, cache=None):
    out = io.StringIO()
    args = list(argv)
    if cache is not None:
        args += ["--cache-dir", str(cache)]
    code = run(args, out)
    return code, out.getvalue()


def call_json(*argv, cache=None):
    code, text = call(*argv, "--json", cache=cache)
    return code, json.loads(text)


def test_zs_atoms(tmp_path):
    code, doc = call_json("zs-atoms", "--group", "2,2", cache=tmp_path)
    assert code == 0 and doc["schema"] == 1 and doc["status"] == "ok"
    res = doc["result"]
    assert res["count"] == 5 and res["max_length"] == 3 and res["exhaustive"]
    assert "(0,1)*(1,0)*(1,1)" in res["atoms"]
    assert (tmp_path / "atoms_2-2_L3.json").exists()
    code, doc = call_json("zs-atoms", "--group", "3", "--max-len", "2", cache=tmp_path)
    assert doc["result"]["count"] == 2 and not doc["result"]["exhaustive"]


def test_zs_davenport_and_lengths(tmp_path):
    code, doc = call_json("zs-davenport", "--group", "3,3")
    assert code == 0 and doc["result"]["davenport"] == 5
    code, doc = call_json("zs-lengths", "--group", "3", "--elem", "(1)^3*(2)^3", cache=tmp_path)
    assert code == 0
    assert doc["result"]["lengths"] == [2, 3] and doc["result"]["distances"] == [1]
    assert doc["result"]["classification"] == {"kind": "interval", "difference": 1}


def test_zs_delta():
    code, doc = call_json("zs-delta", "--group", "3", "--bound", "12")
    res = doc["result"]
    assert code == 0 and res["delta"] == [1] and res["bound"] == 12
    assert res["note"] == "bounded under-approximation"
    assert {2, 3} <= set(res["union_k"])


def test_hq_commands():
    code, doc = call_json("hq-lengths", "--elem", "1+1*i")
    assert code == 0 and doc["result"]["lengths"] == [1]
    code, doc = call_json("hq-factor", "--elem", "2")
    assert code == 0 and doc["result"]["count"] == 1 and doc["result"]["norm"] == "4"
    code, doc = call_json("hq-classes", "--prime", "5")
    assert code == 0 and doc["result"]["count"] == 6
    code, doc = call_json("hq-factor", "--elem", "30", "--cap", "5")
    assert code == 3 and doc["status"] == "budget-exceeded"


def test_mat_commands():
    code, doc = call_json("mat-ideals", "--prime", "3")
    assert code == 0 and doc["result"]["count"] == 4
    assert doc["result"]["ideals"][0] == "[[3,0],[0,1]]"
    code, doc = call_json("mat-factor", "--matrix", "[[2,0],[0,3]]")
    assert code == 0 and doc["result"]["count"] == 2 and doc["result"]["lengths"] == [2]
    code, doc = call_json("mat-transpose", "--matrix", "[[2,0],[0,1]]", "--matrix", "[[1,0],[0,3]]")
    assert code == 0 and all(doc["result"]["checks"].values())
    assert doc["result"]["ideal_level_solutions"] == 1


@pytest.mark.parametrize("argv", [
    ("mat-ideals", "--prime", "6"),
    ("hq-classes", "--prime", "0"),
    ("zs-lengths", "--group", "3", "--elem", "(1)"),
    ("zs-lengths", "--group", "3", "--elem", "garbage"),
    ("mat-factor", "--matrix", "[[1,1],[1,1]]"),
    ("mat-factor",),
    ("mat-transpose", "--matrix", "[[2,0],[0,1]]", "--matrix", "[[1,0],[0,2]]"),
    ("hq-lengths", "--elem", "1/2+i"),
    ("no-such-command",),
    ("zs-atoms",),
])
def test_invalid_input_exit_2(argv, capsys):
    code, _ = call(*argv)
    assert code == 2


def test_budget_exit_3():
    code, doc = call_json("zs-davenport", "--group", "20,20")
    assert code == 3 and doc["status"] == "budget-exceeded"


def test_verify_transfer_and_broken():
    code, doc = call_json("verify-transfer", "--samples", "10", "--instance", "matrix")
    assert code == 0 and doc["result"]["instances"]["matrix"]["passed"]
    code, doc = call_json("verify-transfer", "--samples", "10", "--instance", "hurwitz", "--broken")
    assert code == 4 and doc["status"] == "violation"
    assert not doc["result"]["instances"]["hurwitz"]["passed"]


def test_big_integers_are_strings():
    big = 10**20
    # det = big - (big - 1) = 1, so this is a unit with huge entries
    code, doc = call_json("mat-factor", "--matrix", f"[[{big},{big - 1}],[1,1]]")
    assert code == 0 and doc["result"]["det"] == "1" and doc["result"]["lengths"] == [0]
    assert doc["result"]["matrix"] == f"[[{big},{big - 1}],[1,1]]"
    assert _stringify({"n": 2**53, "m": 2**53 - 1, "f": True}) == {"n": str(2**53), "m": 2**53 - 1, "f": True}


def test_text_output():
    code, text = call("mat-ideals", "--prime", "2")
    assert code == 0
    assert text.startswith("mat-ideals: ok")
    assert "[[1,1],[0,2]]" in text


def test_json_byte_identical(tmp_path):
    argv = ("verify-transfer", "--samples", "8", "--seed", "7")
    assert call(*argv, "--json") == call(*argv, "--json")
    a = call("zs-atoms", "--group", "2,3", "--json", cache=tmp_path / "a")
    b = call("zs-atoms", "--group", "2,3", "--json", cache=tmp_path / "b")
    c = call("zs-atoms", "--group", "2,3", "--json", cache=tmp_path / "a")
    assert a == b == c


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "factorlab", "zs-davenport", "--group", "2,2", "--json"],
        capture_output=True, text=True, cwd=tmp_path,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["davenport"] == 3
