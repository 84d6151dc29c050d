import json
import subprocess
import sys

import pytest

from taut.cli import main
from taut.parsing import parse_operator
from taut.tautbuild import parse_family


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_beta(capsys):
    assert run(capsys, "beta", "--type", "A1", "--mu", "3") == (0, "2/3\n", "")
    code, out, _ = run(capsys, "beta", "--type", "A1xA1", "--mu", "1,1", "--json")
    assert json.loads(out) == {"beta": "2"}


def test_dim_and_delta(capsys):
    assert run(capsys, "dim", "--type", "A1xA1", "--mu", "1,1")[:2] == (0, "4\n")
    assert run(capsys, "delta-i", "--type", "A2", "--I", "1")[:2] == (0, "0,3/2\n")


def test_fano(capsys):
    assert run(capsys, "fano", "--type", "G2", "--I", "2")[:2] == (0, "true\n")
    assert run(capsys, "fano", "--type", "A2", "--I", "1", "--weight", "0,-1")[:2] == (1, "false\n")


def test_build_and_fl(capsys):
    code, out, _ = run(capsys, "build", "--family", "rnc:2", "--beta", "1")
    assert code == 0
    lines = out.splitlines()
    v = ("z0", "z1", "z2")
    assert parse_operator(lines[0], v) == parse_operator("4*z0*z2 - z1^2", v)
    assert len(lines) == 5
    code, out, _ = run(capsys, "fl", "--op", "dt*t + 1/2", "--vars", "t")
    assert out == "-t*dt + 1/2\n"
    code, out, _ = run(capsys, "transpose", "--op", "x*dx", "--vars", "x")
    assert out == "-x*dx - 1\n"


def test_build_json_is_sorted_and_deterministic(capsys):
    _, a, _ = run(capsys, "build", "--family", "segre", "--json")
    _, b, _ = run(capsys, "build", "--family", "segre", "--json")
    assert a == b
    data = json.loads(a)
    assert list(data) == sorted(data)
    assert data["vars"] == ["x11", "x12", "x21", "x22"]
    assert len(data["generators"]) == 8


def test_spec_file(tmp_path, capsys):
    path = tmp_path / "segre.json"
    path.write_text(parse_family("segre").spec(2).dumps())
    assert run(capsys, "member", "--spec", str(path), "--op", "x11*d11*d22 - x11*d21*d12")[0] == 0
    assert run(capsys, "member", "--spec", str(path), "--op", "d11*d22 - d21*d12")[0] == 1


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "--ideal", "dx - 1; dy", "--vars", "x,y", "--op", "x*dx + dy")
    assert (code, out) == (0, "x\n")


def test_rank(capsys):
    assert run(capsys, "rank", "--family", "rnc:2", "--beta", "1")[:2] == (0, "1\n")
    code, out, _ = run(capsys, "rank", "--family", "rnc:3", "--beta", "2/3", "--crosscheck", "--json")
    assert code == 0
    assert json.loads(out) == {"agree": True, "oracle": 1, "rank": 1}
    code, out, _ = run(capsys, "rank", "--family", "segre", "--method", "block")
    assert (code, out) == (0, "1\n")


@pytest.mark.parametrize("suite", ["segre-membership", "ideal-equality", "charts", "nbeta", "casimir", "beta"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", suite)
    assert code == 0
    assert out and all(line.startswith("PASS") for line in out.splitlines())


def test_verify_nbeta_options(capsys):
    code, out, _ = run(capsys, "verify", "nbeta", "--k", "3", "--beta", "2/3", "--json")
    assert code == 0
    assert json.loads(out)["ok"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["beta", "--type", "Z9", "--mu", "1"],
        ["beta", "--type", "A1", "--mu", "0"],
        ["nf", "--ideal", "dx +", "--vars", "x", "--op", "x"],
        ["nf", "--op", "x"],
        ["build"],
        ["build", "--spec", "/nonexistent.json"],
        ["rank", "--ideal", "dx", "--vars", "x", "--crosscheck"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("taut: error:")


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["beta", "--type", "A1", "--mu", "x"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["beta", "--type", "A1", "--mu", "1", "--bogus"])


def test_term_order_env(capsys, monkeypatch):
    monkeypatch.setenv("TAUT_ORDER", "lex")
    _, lex, _ = run(capsys, "fl", "--op", "x^2 + y^3", "--vars", "x,y")
    monkeypatch.setenv("TAUT_ORDER", "grevlex")
    _, grevlex, _ = run(capsys, "fl", "--op", "x^2 + y^3", "--vars", "x,y")
    assert lex == "dx^2 - dy^3\n"
    assert grevlex == "-dy^3 + dx^2\n"
    monkeypatch.setenv("TAUT_ORDER", "nonsense")
    assert run(capsys, "fl", "--op", "x", "--vars", "x")[0] == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "taut.cli", "verify", "segre-membership"], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "taut.cli", "beta", "--type", "A1", "--mu", "3"], capture_output=True, text=True)
    assert proc.stdout == "2/3\n"


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert any(k.startswith("ranks:") for k in data["checks"])
