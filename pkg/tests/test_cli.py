import json
import subprocess
import sys

import pytest

from hyperdet.cli import main
from hyperdet.factory import planted_degenerate, special_symplectic
from hyperdet.tensor import SymplecticForm, to_json


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(out):
    return json.loads(out)


def test_invariant_special(capsys, write):
    f = write("a.json", to_json(special_symplectic(1, 2)))
    code, out, err = run(capsys, "invariant", f, "--mod-p", "10007")
    rep = report(out)
    assert code == 0
    assert rep["results"]["value"] == "-1"
    assert rep["results"]["value_mod_p"] == 10006
    assert rep["results"]["matrix_dimension"] == 12
    assert rep["input_digest"].startswith("sha256:")
    assert "D = -1" in err


def test_invariant_degenerate_is_zero(capsys, write):
    A, _ = planted_degenerate(1, 2, 4)
    code, out, _ = run(capsys, "invariant", write("a.json", to_json(A)))
    assert code == 0 and report(out)["results"]["value"] == "0"


def test_invariant_dtilde(capsys, write):
    f = write("p.json", "")
    assert run(capsys, "gen", "pair", "--n", "1", "--k", "2", "--seed", "3", "--out", f)[0] == 0
    code, out, _ = run(capsys, "invariant", f, "--which", "dtilde")
    assert code == 0 and report(out)["results"]["value"] != "0"
    # a pair document is not a tensor3 document
    assert run(capsys, "invariant", f)[0] == 2


@pytest.mark.parametrize("argv", [
    ["invariant", "/nonexistent.json"],
    ["invariant", "{bad}", "--mod-p", "12"],
    ["verify", "--formats", "1-2"],
    ["verify", "--formats", "0:0"],
    ["verify", "--seeds", "0"],
    ["verify", "--mod-p", "10005"],
    ["gen", "special"],
    ["gen", "orbit"],
    ["gen", "special", "--n", "0", "--k", "0"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check"])
    assert info.value.code == 2


def test_parse_error_reports_location(capsys, write):
    f = write("bad.json", '{"kind": "tensor3", "n": 0, "k": 1, "entries": [[[1.5, 0]], [[0, 0]]]}')
    code, _, err = run(capsys, "invariant", f)
    assert code == 2 and "$.entries[0][0][0]" in err


def test_check_commands(capsys, write):
    A, w = planted_degenerate(0, 2, 1)
    f = write("d.json", to_json(A, witness=w))
    code, out, _ = run(capsys, "check", f, "--which", "witness,degenerate-exact")
    rep = report(out)
    assert code == 0
    assert rep["checks"] == {"witness": True, "degenerate-exact": True}
    assert rep["results"]["degenerate-exact"] == "degenerate"
    code, out, _ = run(capsys, "check", f, "--which", "certify")
    assert code == 1 and report(out)["results"]["certify"] == "inconclusive"
    code, out, _ = run(capsys, "check", f, "--which", "complex")
    assert code == 1


def test_check_special(capsys, write):
    f = write("s.json", to_json(special_symplectic(1, 2), J=SymplecticForm.standard(6)))
    code, out, _ = run(capsys, "check", f, "--which", "complex,certify")
    rep = report(out)
    assert code == 0 and rep["results"]["D"] == "-1"
    # n != 0 is outside the exact decision
    code, _, err = run(capsys, "check", f, "--which", "degenerate-exact")
    assert code == 2 and "unsupported format" in err
    assert run(capsys, "check", f, "--which", "witness")[0] == 2
    assert run(capsys, "check", f, "--which", "pair")[0] == 2
    assert run(capsys, "check", f, "--which", "bogus")[0] == 2


def test_gen_round_trip(capsys, write):
    f = write("s.json", "")
    assert run(capsys, "gen", "special", "--n", "2", "--k", "3", "--out", f)[0] == 0
    code, out, _ = run(capsys, "gen", "orbit", f, "--seed", "4")
    assert code == 0
    g = write("o.json", out)
    code, out, _ = run(capsys, "invariant", g)
    assert report(out)["results"]["value"] == "1"
    code, out, _ = run(capsys, "check", g, "--which", "complex")
    assert code == 0
    code, out, _ = run(capsys, "gen", "degenerate", "--n", "0", "--k", "2", "--seed", "7")
    assert "witness" in json.loads(out)


def test_verify(capsys):
    code, out, err = run(capsys, "verify", "--suite", "lemma", "--formats", "0:1,1:2", "--seeds", "3")
    rep = report(out)
    assert code == 0 and rep["checks"]["all_passed"]
    assert [a["cases"] for a in rep["results"]["aggregate"]] == [9, 6]
    assert "lemma n=1 k=2: 6/6 passed" in err


def test_verify_reports_signs(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "weights", "--formats", "1:2", "--seeds", "3")
    signs = report(out)["results"]["measured_signs"]
    assert code == 0
    assert signs == {"weights:1:2:I-weight-sign": "sign=+1", "weights:1:2:V-weight-sign": "sign=+1"}


def test_self_test_fails(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "weights", "--formats", "0:2", "--seeds", "2", "--self-test")
    assert code == 1 and report(out)["results"]["failures"]


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "--timing", "verify", "--suite", "modp", "--formats", "0:1", "--seeds", "1")
    assert "timing_seconds" in report(out)


def test_verify_deterministic(capsys):
    argv = ["verify", "--suite", "all", "--formats", "0:2,1:1", "--seeds", "2", "--seed", "11"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hyperdet.cli", "verify", "--suite", "lemma", "--formats", "0:1", "--seeds", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["checks"]["all_passed"]
