import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from test_acceptance import GOLDEN, golden_cases, run_golden  # noqa: E402

from causal_games import cli  # noqa: E402


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", golden_cases())
def test_golden(name):
    ok, got = run_golden(name)
    assert ok, f"{name} produced:\n{got}"


def test_golden_inventory_covers_worked_examples():
    names = set(golden_cases())
    for required in ["interp_worked_example", "normalize_id1", "compose_counterexample", "axioms_coherence",
                     "compile_cut_example", "compile_chain_xy", "compile_chain_x", "compile_chain_closed"]:
        assert required in names
    for g in ["muP", "etaP", "deltaP", "epsP", "etaOP", "epsOP", "gammaP", "gammaOP"]:
        assert f"compile_witness_{g}" in names


def test_golden_values_match_independent_expectations():
    # the expected files must themselves agree with the source's values
    doc = json.loads((GOLDEN / "interp_worked_example.out").read_text())
    assert doc["entries"] == [[2, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1]]
    assert (GOLDEN / "normalize_id1.out").read_text() == "W0 E H Z\n"
    assert json.loads((GOLDEN / "compose_counterexample.out").read_text())["cyclic"] is True
    assert (GOLDEN / "axioms_coherence.out").read_text() == "not member\n"
    mu = json.loads((GOLDEN / "compile_witness_muP.out").read_text())
    assert mu["pairs"] == [[["dom", 0], ["cod", 0]], [["dom", 1], ["cod", 0]]]


def test_usage_error_exit_code(capsys):
    code, out, err = run(["interp"], capsys)
    assert code == 2 and out == "" and "usage" in err
    assert run(["frobnicate"], capsys)[0] == 2


def test_domain_error_exit_code(capsys):
    code, out, err = run(["normalize", "--theory", "B", "mu ; mu"], capsys)
    assert code == 1 and out == ""
    assert "cannot compose" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run(["interp", "--theory", "B", "mu ;; eta"], capsys)
    assert code == 1 and "offset" in err


def test_missing_file_is_a_domain_error(capsys):
    assert run(["compile-proof", "@does/not/exist.proof"], capsys)[0] == 1


def test_stdin_input(capsys, monkeypatch):
    code, out, _ = run(["normalize", "--theory", "R", "-"], capsys, "delta ; mu\n", monkeypatch)
    assert (code, out) == (0, "W0 E H Z\n")


def test_interp_relations_json(capsys):
    code, out, _ = run(["interp", "--theory", "R", "delta ; mu"], capsys)
    assert json.loads(out) == {"m": 1, "n": 1, "entries": [[True]]}


def test_output_is_deterministic(capsys):
    argv = ["compile-proof", "@" + str(GOLDEN / "inputs" / "witness_gammaOP.proof")]
    first = run(argv, capsys)[1]
    assert first and run(argv, capsys)[1] == first


def test_confluence_g(capsys):
    code, out, _ = run(["confluence", "--theory", "G", "--bound", "4"], capsys)
    assert code == 0 and "0 unjoinable" in out


def test_check_model_exit_code_reflects_failures(capsys):
    assert run(["check-model", "--theory", "G-derived"], capsys)[0] == 0
    assert run(["check-model", "--theory", "R", "--model", "MRel"], capsys)[0] == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "causal_games", "normalize", "--theory", "B", "id(1)"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == "W0 E H Z\n"
