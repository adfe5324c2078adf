import json
import re
import subprocess
import sys

import pytest

from smallcancel.cli import run

CONFIG = """K.generators = s x y h
L.generators = s a
shared = s
x = x
y = y
a = a
h = h
"""


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normal_form_example(capsys):
    code, out, _ = call(capsys, "normal-form", "--preset", "amalgam-h0", "--word", "x a a^-1 y")
    assert code == 0
    assert out.splitlines() == ["x y", "length 1"]


def test_dehn_example(capsys, tmp_path):
    path = tmp_path / "d.json"
    code, out, _ = call(capsys, "dehn", "--preset", "amalgam-h1", "--cap", "80", "--word", "x",
                        "--json", str(path))
    assert code == 1 and out.startswith("Nontrivial")
    rep = json.loads(path.read_text())
    assert rep["result"]["outcome"] == "nontrivial" and rep["exit_code"] == 1


def test_dehn_trivial_with_trace(capsys, tmp_path):
    path = tmp_path / "d.json"
    # at cap 2 r0 = h a y a x a y a y a; a conjugate of it is trivial
    w = "y h a y a x a y a y a y^-1"
    code, out, _ = call(capsys, "dehn", "--cap", "2", "--uncertified", "--word", w, "--json", str(path))
    assert code == 0 and out.startswith("Trivial")
    assert json.loads(path.read_text())["result"]["steps"]


def test_check_cc_full_scale(capsys, tmp_path):
    path = tmp_path / "cc.json"
    code, out, _ = call(capsys, "check-cc", "--preset", "amalgam-h1", "--cap", "80",
                        "--lambda", "1/10", "--json", str(path))
    assert code == 0 and "Certified" in out
    res = json.loads(path.read_text())["result"]
    assert res["max_piece_length"] <= 601
    assert res["lambda"] == "1/10" and res["certified"]


def test_check_cc_small_cap_violated(capsys):
    code, out, _ = call(capsys, "check-cc", "--cap", "4")
    assert code == 1 and "Violated" in out


def test_pieces_and_report(capsys):
    code, out, _ = call(capsys, "pieces", "--cap", "4")
    assert code == 0 and "max piece length 15" in out
    code, out, _ = call(capsys, "report")
    assert code == 0 and "6640" in out


def test_reduce(capsys):
    code, out, _ = call(capsys, "reduce", "--word", "x y y^-1 x", "--factor", "K")
    assert code == 0 and out.split()[0] == "x^2"


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "system.cfg"
    cfg.write_text(CONFIG)
    code, out, _ = call(capsys, "normal-form", "--config", str(cfg), "--word", "x s a")
    assert code == 0 and out.splitlines()[:2] == ["x s a", "length 2"]


def test_verify_step(capsys):
    code, out, _ = call(capsys, "verify-step", "--radius", "1")
    assert code == 0
    code, _, err = call(capsys, "verify-step", "--radius", "1", "--h-n", "x")
    assert code == 2 and "h notin H" in err


@pytest.mark.parametrize("argv,field", [
    (["reduce", "--word", "x q", "--factor", "K"], "word"),
    (["reduce", "--word", "a", "--factor", "K"], "factor"),
    (["check-cc", "--lambda", "0"], "lambda"),
    (["check-cc", "--lambda", "banana"], "lambda"),
    (["check-cc", "--cap", "1"], "cap"),
    (["pieces", "--relators", "-1"], "relators"),
    (["dehn", "--cap", "4", "--word", "x"], "relators"),
    (["topology-base", "--count", "3", "--budget", "100"], "budget"),
    (["normal-form", "--preset", "nope", "--word", "x"], "preset"),
    (["frobnicate"], "usage"),
])
def test_errors_exit_2_and_name_field(capsys, argv, field):
    code, _, err = call(capsys, *argv)
    assert code == 2
    lines = err.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith(f"error: {field}")


def test_bad_config_names_field(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(CONFIG.replace("y = y", "y = x"))
    code, _, err = call(capsys, "report", "--config", str(cfg))
    assert code == 2 and "good_fellows(x,y)" in err


def test_json_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(["topology-base", "--cap", "8", "--count", "3", "--uncertified", "--json", str(p)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["schema"] == 1 and rep["version"]
    assert rep["config"]["system"]["name"] == "amalgam-h1" and rep["config"]["cap"] == 8
    # rationals are never written as floats
    assert not re.search(r"\d\.\d", json.dumps(rep["result"]))


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "smallcancel.cli", "normal-form", "--word", "x s"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("x s")
