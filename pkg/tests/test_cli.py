from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from qhermite import identities
from qhermite.cli import run
from qhermite.families import FAMILIES, FamilyTable, new_qhermite
from qhermite.identities import identity_names
from qhermite.mpoly import S, XSPoly


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_oracle_example():
    code, out, _ = _run("oracle", "--n", "6", "--k", "0")
    assert code == 0
    assert out.strip() == '{"c":[5,6,3,1]}'


def test_oracle_cap_is_an_error():
    code, out, err = _run("oracle", "--n", "15", "--k", "1")
    assert code == 2
    assert out == ""
    assert "14" in err


def test_table_latex_example():
    code, out, _ = _run("table", "--family", "new_qhermite", "--n", "4", "--format", "latex")
    assert code == 0
    assert "(2+q)s^{2}-(3+2q+q^{2})sx^{2}+x^{4}" in out.splitlines()[-1]


def test_table_json_round_trips():
    code, out, _ = _run("table", "--family", "new_qhermite", "--n", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    got = [XSPoly.from_json(e) for e in data["entries"]]
    assert got == list(new_qhermite(5))


def test_unknown_family_lists_valid_names():
    code, _, err = _run("table", "--family", "nope", "--n", "2")
    assert code == 2
    assert "--family" in err
    assert all(name in err for name in FAMILIES)


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--n", "3"],
        ["table", "--family", "new_qhermite", "--n", "-1"],
        ["hankel", "--family", "new_qhermite", "--spec", "newH", "--n", "2"],
        ["cf", "--spec", "bogus", "--n", "2"],
        ["verify"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_two(argv):
    code, out, err = _run(*argv)
    assert code == 2
    assert out == ""
    assert err


def test_verify_lists_each_identity_once():
    code, out, _ = _run("verify", "--all", "--max-n", "6")
    assert code == 0
    for name in identity_names():
        assert sum(1 for line in out.splitlines() if f"  {name}  " in line) == 1
    assert out.strip().endswith(f"{len(identity_names())}/{len(identity_names())} identities pass")


def test_verify_json_output():
    code, out, _ = _run("verify", "--identity", "cor12", "--identity", "remark_c", "--max-n", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "pass"
    names = [r["name"] for r in data["reports"]]
    assert names == ["cor12", "remark_c"]


def test_verify_failure_exits_one(monkeypatch):
    def broken(N):
        t = new_qhermite(N)
        entries = list(t.entries)
        if N >= 3:
            entries[3] = entries[3] + S
        return FamilyTable(t.name, tuple(entries))

    monkeypatch.setattr(identities, "new_qhermite", broken)
    code, out, _ = _run("verify", "--identity", "operator_equals_moments", "--max-n", "5")
    assert code == 1
    assert "FAIL" in out
    assert "witness n=3" in out


def test_out_writes_file(tmp_path):
    target = tmp_path / "h.csv"
    code, out, _ = _run("export", "--family", "t_family", "--n", "2", "--format", "csv", "--out", str(target))
    assert code == 0
    assert out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "family,n,x,s,coef"


def test_cf_and_hankel():
    code, out, _ = _run("cf", "--spec", "newH", "--n", "3")
    assert code == 0
    assert "mu_3 = x(-(2+q)s+x^2)" in out
    code, out, _ = _run("hankel", "--family", "new_qhermite", "--n", "2")
    assert code == 0
    assert out.strip() == "-s"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qhermite", "oracle", "--n", "4", "--k", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == '{"c":[2,1]}'
