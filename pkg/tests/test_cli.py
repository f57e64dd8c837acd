from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from drinfeld import cli
from drinfeld.drinfeld import ConsistencyError

# one small invocation per subcommand
CASES = {
    ("ss", "enumerate"): "--q 2 --rank 2 --place t",
    ("ss", "mass"): "--q 2 --rank 2 --place t",
    ("ss", "leveled"): "--q 2 --rank 2 --place t --level t+1",
    ("ss", "dim"): "--q 2 --rank 2 --place t --level t+1 --verify",
    ("brandt", "matrix"): "--q 2 --rank 2 --place t+1 --level t --primes t^2+t+1 --weight 1",
    ("brandt", "eigensystems"): "--q 2 --rank 2 --place t --level t+1 --prime-degree-max 2",
    ("brandt", "periodicity"): "--q 2 --rank 2 --place t --level t+1 --primes t^2+t+1 --weights 0-1",
    ("jl", "verify"): "--q 2 --rank 2 --place t+1 --prime-degree-max 2 --moduli-weights 1-3",
    ("moduli", "point"): "--q 2 --rank 2 --place t+1 --seed 3",
    ("moduli", "form-basis"): "--q 2 --rank 2 --place t+1 --weights 0-2",
    ("moduli", "hecke"): "--q 2 --rank 2 --place t+1 --primes t^2+t+1 --weight 1",
    ("moduli", "strata"): "--q 2 --rank 2 --place t+1 --samples 20 --with-ss",
    ("moduli", "components"): "--q 2 --level t^2+t+1",
    ("moduli", "limit"): "--q 2 --rank 2 --place t+1 --field-degree 4",
    ("hecke-local", "reps"): "--q_w 2 --rank 2 --mu 1,0",
    ("hecke-local", "convolve"): "--q_w 2 --mu 1,0 --mu 1,0",
    ("hecke-local", "commute"): "--q_w 3 --mu 1,0,0 --mu 1,1,0",
    ("drinfeld", "phi"): "--q 2 --field-degree 2 --gamma 0,1 --coeffs 1 --a t^2",
    ("drinfeld", "height"): "--q 2 --field-degree 2 --place t^2+t+1 --coeffs 0;1",
    ("drinfeld", "charpoly"): "--q 2 --field-degree 2 --gamma 0 --coeffs 0;1",
    ("drinfeld", "stable-model"): "--q 2 --coeffs pi;pi",
    ("drinfeld", "weil-check"): "--q 2 --minpoly t;0;1 --m 1 --rank 2 --place t",
}


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def schema(group, action):
    text = resources.files("drinfeld").joinpath("schemas", cli.schema_name(group, action)).read_text()
    return json.loads(text)


def test_every_subcommand_has_a_case():
    assert set(CASES) == set(cli.COMMANDS)


@pytest.mark.parametrize("cmd", sorted(CASES), ids=lambda c: "-".join(c))
def test_output_validates_and_is_reproducible(cmd, capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    argv = list(cmd) + CASES[cmd].split()
    code, first, _ = run(capsys, argv)
    assert code == 0
    data = json.loads(first)
    sch = schema(*cmd)
    jsonschema.Draft202012Validator.check_schema(sch)
    jsonschema.validate(data, sch)
    code, second, _ = run(capsys, argv)
    assert code == 0 and second == first
    code, csv_text, _ = run(capsys, argv + ["--format", "csv"])
    assert code == 0 and csv_text.count("\n") >= 2


def test_spec_examples(capsys):
    assert json.loads(run(capsys, ["ss", "mass", "--q", "2", "--rank", "2", "--place", "t"])[1]) == {"mass": "1/3"}
    out = json.loads(run(capsys, ["moduli", "components", "--q", "2", "--level", "t^2+t+1"])[1])
    assert out == {"components": 3}
    out = json.loads(run(capsys, ["hecke-local", "reps", "--q_w", "2", "--rank", "2", "--mu", "1,0"])[1])
    assert out["count"] == 3 and len(out["representatives"]) == 3


@pytest.mark.parametrize("argv", [
    ["ss", "mass", "--q", "6", "--rank", "2", "--place", "t"],
    ["ss", "mass", "--q", "2", "--rank", "2", "--place", "t^2+1"],
    ["ss", "mass", "--q", "2", "--rank", "2"],
    ["ss", "leveled", "--q", "2", "--rank", "2", "--place", "t", "--level", "t^2"],
    ["hecke-local", "reps", "--q_w", "2", "--mu", "0,1"],
    ["drinfeld", "height", "--q", "2", "--field-degree", "2", "--gamma", "1", "--coeffs", "0;1", "--place", "t"],
    ["moduli", "point", "--q", "2", "--rank", "2", "--place", "t"],
    ["brandt", "matrix", "--q", "2", "--rank", "2", "--place", "t+1", "--level", "t", "--primes", "t"],
])
def test_precondition_exit_code(argv, capsys):
    code, out, err = run(capsys, argv)
    assert code == cli.EXIT_PRECONDITION and "error" in err and out == ""


def test_argparse_errors_exit_one(capsys):
    for argv in (["nosuch", "thing"], ["ss", "nosuch"], ["ss", "mass", "--q", "two"]):
        with pytest.raises(SystemExit) as info:
            cli.main(argv)
        assert info.value.code == cli.EXIT_PRECONDITION


def test_resource_cap_exit_code(capsys):
    code, _, err = run(capsys, ["ss", "enumerate", "--q", "2", "--rank", "3", "--place", "t", "--cap", "10"])
    assert code == cli.EXIT_CAP and "cap" in err


def test_consistency_exit_code(capsys, monkeypatch):
    def broken(args):
        raise ConsistencyError("enumerated mass 1 differs from 1/3")

    monkeypatch.setitem(cli.COMMANDS, ("ss", "mass"), (broken, "broken"))
    code, _, err = run(capsys, ["ss", "mass", "--q", "2", "--rank", "2", "--place", "t"])
    assert code == cli.EXIT_CONSISTENCY and "consistency" in err


def test_cache_dir_roundtrip(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    argv = ["ss", "enumerate", "--q", "2", "--rank", "3", "--place", "t"]
    code, first, _ = run(capsys, argv)
    files = list(tmp_path.iterdir())
    assert code == 0 and len(files) == 1
    code, second, _ = run(capsys, argv)
    assert code == 0 and second == first
    files[0].write_text("not json")
    code, third, _ = run(capsys, argv)
    assert code == 0 and third == first


def test_out_file(capsys, tmp_path):
    target = tmp_path / "mass.json"
    code, out, _ = run(capsys, ["ss", "mass", "--q", "3", "--rank", "2", "--place", "t", "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text()) == {"mass": "1/8"}


def test_console_script_is_byte_identical(tmp_path):
    argv = [sys.executable, "-m", "drinfeld.cli", "moduli", "strata", "--q", "3", "--rank", "2",
            "--place", "t+1", "--samples", "30", "--seed", "5"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["agrees_with_height"]
