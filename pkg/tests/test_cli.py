import json
import subprocess
import sys

import pytest

from cascadekit import SCHEMA_VERSION, suites
from cascadekit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cascade_sl4(capsys):
    code, out = run(capsys, "cascade", "--algebra", "sl(4,R)")
    d = json.loads(out)
    assert code == 0
    assert d["betas"] == ["e1-e4", "e2-e3"]
    assert d["schema_version"] == SCHEMA_VERSION


def test_unknown_algebra_is_usage_error(capsys):
    code, _ = run(capsys, "cascade", "--algebra", "nope")
    assert code == 2


def test_json_stdout(capsys):
    code, out = run(capsys, "cascade", "--algebra", "sl(3,R)", "--json", "-")
    assert code == 0 and json.loads(out)["c"] == 2


def test_json_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, _ = run(capsys, "density", "--algebra", "sl(4,R)", "--json", str(path))
    d = json.loads(path.read_text())
    assert code == 0 and d["degree"] == 2 and d["c"] == 8


def test_density_examples(capsys):
    d = json.loads(run(capsys, "density", "--algebra", "sl(3,R)")[1])
    assert (d["P"], d["degree"], d["c"]) == ("λ1", 1, 2)
    d = json.loads(run(capsys, "density", "--algebra", "sl(2,R)")[1])
    assert (d["P"], d["c"]) == ("1", 1)


def test_parabolic_single_and_all(capsys):
    d = json.loads(run(capsys, "parabolic", "--algebra", "sl(4,R)", "--phi", "0b010")[1])
    assert d["dim_n_phi"] == 5 and d["density"] == "-λ1^2"
    d = json.loads(run(capsys, "parabolic", "--algebra", "sl(4,R)", "--all")[1])
    assert len(d["reports"]) == 8
    d = json.loads(run(capsys, "parabolic", "--algebra", "sl(4,R)", "--phi", "0b111")[1])
    assert d["dim_n_phi"] == 0 and d["layers"] == [] and d["density"] == "1"


def test_parabolic_bad_mask(capsys):
    assert run(capsys, "parabolic", "--algebra", "sl(4,R)", "--phi", "0b10000")[0] == 2


def test_lattice(capsys):
    code, out = run(capsys, "lattice", "--algebra", "split-A(2)", "--box", "2")
    assert code == 0
    assert json.loads(out)["rows"]
    assert run(capsys, "lattice", "--algebra", "su(2,1)")[0] == 2


def test_verify_exit_codes(capsys, monkeypatch):
    code, out = run(capsys, "verify", "lattice")
    assert code == 0 and json.loads(out)["ok"]
    fake = lambda name, **kw: {"algebra": name, "ok": False, "failures": ["forced"]}
    monkeypatch.setattr(suites, "lattice_checks", fake)
    code, out = run(capsys, "verify", "--suite", "lattice")
    assert code == 1 and json.loads(out)["failed"]
    assert run(capsys, "verify", "bogus")[0] == 2


def test_byte_identical_output(capsys):
    a = run(capsys, "cascade", "--algebra", "so(3,4)")[1]
    b = run(capsys, "cascade", "--algebra", "so(3,4)")[1]
    assert a == b


def test_jobs_do_not_change_output():
    cmd = [sys.executable, "-m", "cascadekit", "verify", "lattice"]
    one = subprocess.run(cmd + ["--jobs", "1"], capture_output=True, check=True).stdout
    two = subprocess.run(cmd + ["--jobs", "2"], capture_output=True, check=True).stdout
    assert one == two


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cascadekit", "cascade", "--algebra", "nope"],
                         capture_output=True)
    assert res.returncode == 2
