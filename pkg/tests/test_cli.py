import json
import subprocess
import sys

import pytest

from nilpattern import corpus
from nilpattern.cli import main
from nilpattern.exactnum import subspace_equal, subspace_sum
from nilpattern.forms import v_spaces
from nilpattern.io import (
    InputError, load_path, load_workspace, subspace_from_json, subspace_to_json, workspace_to_json,
)
from nilpattern.pattern import tensor_space

from helpers import PSI, sp


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_flag_witness(capsys):
    code, out, _ = run(capsys, "flag", "psi-2134")
    assert code == 1
    assert json.loads(out) == {"flag": False, "witness": [1, 2]}


def test_gpsi_horizontal(capsys):
    code, out, _ = run(capsys, "gpsi", "heisenberg-horizontal")
    assert code == 0
    got = subspace_from_json(json.loads(out)["g_psi"])
    V1, V2 = v_spaces(PSI, 2)
    want = subspace_sum(tensor_space(sp(3, (1, 0, 0), (0, 1, 0)), V1), tensor_space(sp(3, (0, 0, 1)), V2))
    assert subspace_equal(got, want)


def test_validate_abelian(capsys):
    assert run(capsys, "validate", "abelian-split")[0] == 0


def test_irrational_modes(capsys):
    code, out, _ = run(capsys, "irrational", "heisenberg-rational-shift")
    assert code == 1 and json.loads(out)["witness"]["witness"] == [2, 1, -1]
    assert run(capsys, "irrational", "heisenberg-rational-shift", "--mode", "filtration")[0] == 0
    assert run(capsys, "irrational", "heisenberg-rational-shift", "--mode", "strong")[0] == 1


def test_quantitative_flags(capsys):
    assert run(capsys, "irrational", "two-dim-rational", "--A", "10", "--N", "100000")[0] == 0
    # at N = 10 the tolerance A/N = 1 swallows everything
    assert run(capsys, "irrational", "two-dim-rational", "--A", "10", "--N", "10")[0] == 1
    code, out, _ = run(capsys, "factorise", "heisenberg-rational-shift", "--A", "10", "--N", "1000000",
                       "--assignment", "a=sqrt2,b=sqrt3,g=sqrt5")
    rep = json.loads(out)
    assert code == 0 and "measured" in rep


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "heisenberg-rational-shift", "--degree", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["a_r"] == [{}, {}, {"1": "1/3"}]
    assert rep["a_p"][2] == {"a": "2/1", "b": "1/1"}


def test_weyl_csv_and_out_file(capsys, tmp_path):
    target = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "weyl", "weyl-sqrt2", "--N", "10,100", "--out", str(target))
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["N"] for r in rows] == [10, 100]
    lines = target.read_text().splitlines()
    assert lines[0] == "character,N,modulus" and len(lines) == 3
    assert float(lines[2].split(",")[2]) == rows[1]["modulus"]


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "validate", str(bad))[0] == 2
    undeclared = tmp_path / "undeclared.json"
    data = json.loads((corpus.corpus_dir() / "heisenberg-horizontal.json").read_text())
    data["symbols"] = ["a"]
    undeclared.write_text(json.dumps(data))
    code, out, err = run(capsys, "validate", str(undeclared))
    assert code == 2 and err and not out
    assert run(capsys, "flag", "heisenberg-rational-shift")[0] == 2


def test_counting_numeric_csv(capsys, tmp_path):
    target = tmp_path / "chars.csv"
    code, out, _ = run(capsys, "counting-numeric", "heisenberg-horizontal", "--N", "50,100",
                       "--height", "1", "--out", str(target))
    rep = json.loads(out)
    lines = target.read_text().splitlines()
    assert lines[0] == "character,N,modulus"
    assert len(lines) == 1 + 2 * rep["characters"]
    assert rep["constraint_exact"]


def test_guard_exit_code(capsys, tmp_path):
    f = tmp_path / "phase.json"
    f.write_text(json.dumps({"D": 3, "terms": [[[1, 1, 1], "sqrt2"]]}))
    assert run(capsys, "weyl", str(f), "--N", "1000")[0] == 3


def test_examples_command(capsys):
    code, out, _ = run(capsys, "examples")
    rep = json.loads(out)
    assert code == 0 and rep["all_ok"]
    assert len(rep["examples"]) == sum(len(v) for v in corpus.CHECKS.values())


def test_bundled_files_match_builders():
    for name, data in corpus.WORKSPACES.items():
        on_disk = json.loads((corpus.corpus_dir() / f"{name}.json").read_text())
        assert on_disk == json.loads(json.dumps(data)), name


def test_workspace_round_trip():
    for name in corpus.WORKSPACES:
        ws = load_path(corpus.resolve(name))
        again = load_workspace(workspace_to_json(ws))
        if ws.algebra is not None:
            assert again.algebra.entries() == ws.algebra.entries()
        if ws.poly is not None:
            assert again.poly == ws.poly
        if ws.S is not None:
            assert all(a == b for a, b in zip(again.S, ws.S))
        if ws.forms is not None:
            assert again.forms.rows == ws.forms.rows


def test_subspace_json_round_trip():
    s = sp(4, (0, 2, 1, 1), (1, 2, 3, 0))
    assert subspace_from_json(json.loads(json.dumps(subspace_to_json(s)))) == s
    with pytest.raises(InputError):
        subspace_from_json({"ambient": 3, "basis": [[1, 0]]})


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nilpattern", "flag", "psi-2134"], capture_output=True, text=True)
    assert res.returncode == 1 and json.loads(res.stdout)["witness"] == [1, 2]
