import json
import subprocess
import sys

import pytest

from annskein.cli import EXIT_BOUND, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from annskein.exactcore import LaurentPoly
from annskein.symfunc import SymFunc, psi


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    assert data["schema"] == "1"
    return code, data


def terms_to_symfunc(terms):
    return SymFunc("s", {tuple(t["partition"]): LaurentPoly.parse(t["coeff"]) for t in terms})


def test_trace_examples(capsys):
    code, data = run_json(capsys, "trace", "n=2: 1")
    assert code == EXIT_OK
    assert data["s"] == [{"partition": [2], "coeff": "q"}, {"partition": [1, 1], "coeff": "-q^-1"}]
    _, data = run_json(capsys, "trace", "n=2:")
    assert terms_to_symfunc(data["s"]) == SymFunc("s", {(2,): 1, (1, 1): 1})
    _, data = run_json(capsys, "trace", "n=2: 1 1", "--N", "2")
    assert data["slN"] == "q^4+q^2+1+q^-2"


def test_trace_other_basis(capsys):
    _, data = run_json(capsys, "trace", "n=2:", "--basis", "p")
    assert data["p"] == [{"partition": [1, 1], "coeff": "1"}]


def test_psi_examples(capsys):
    _, data = run_json(capsys, "psi", "3.2.1.2")
    assert terms_to_symfunc(data["psi"]) == psi((3, 2, 1, 2))
    assert len(data["psi"]) == 7
    _, data = run_json(capsys, "psi", "4")
    assert data["psi"] == [{"partition": [4], "coeff": "1"}]
    _, by_signs = run_json(capsys, "psi", "++-")
    _, by_comp = run_json(capsys, "psi", "3.1")
    assert by_signs["composition"] == [3, 1]
    assert by_signs["psi"] == by_comp["psi"]


def test_hopf_example(capsys):
    _, data = run_json(capsys, "hopf", "1", "1", "--N", "2")
    expect = (LaurentPoly({1: 1, -1: 1}) * LaurentPoly({-3: 1, 1: 1}))
    assert LaurentPoly.parse(data["value"]) == expect
    _, data = run_json(capsys, "hopf", "1", "s[2]+q*s[1,1]", "--N", "2")
    assert "value" in data


def test_cube_example(capsys):
    _, data = run_json(capsys, "cube", "++", "--N", "2")
    assert data["total"] == 2 and data["q_shift"] == 0
    _, data = run_json(capsys, "cube", "3", "--N", "2")
    assert data["chain_dims"] == {"0": 4, "1": 2, "2": 0}
    _, data = run_json(capsys, "cube", "+", "--eval", "0:1,1:1")
    assert data["graded"] is False


def test_wedge_wrap_solomon_end(capsys):
    _, data = run_json(capsys, "wedge-wrap", "1", "1", "--N", "2")
    assert data["text"] == "q+t^-2*q^-3"
    _, data = run_json(capsys, "solomon", "3")
    assert sorted(r["dim"] for r in data["ideals"]) == [1, 1, 2, 2]
    _, data = run_json(capsys, "end", "2", "--qcutoff", "6")
    assert data["match"] is True and data["trusted_qmax"] == 4


def test_text_format(capsys):
    code, out, _ = run(capsys, "trace", "n=2: 1", "--format", "text")
    assert code == EXIT_OK and out.startswith("Tr(n=2: 1) = ")


def test_usage_errors(capsys):
    assert run(capsys, "trace", "n=2: 5")[0] == EXIT_USAGE
    assert run(capsys, "psi", "3..1")[0] == EXIT_USAGE
    assert run(capsys, "hopf", "1", "1")[0] == EXIT_USAGE
    assert run(capsys, "wedge-wrap", "0", "1", "--N", "2")[0] == EXIT_USAGE
    assert run(capsys, "nonsense")[0] == EXIT_USAGE
    code, _, err = run(capsys, "verify", "Z9")
    assert code == EXIT_USAGE and "unknown suite" in err


def test_bound_exit_code(capsys):
    code, _, err = run(capsys, "end", "4")
    assert code == EXIT_BOUND
    assert json.loads(err)["error"] == "bound"
    assert run(capsys, "cube", "++++++", "--N", "4")[0] == EXIT_BOUND


def test_bound_env_override(capsys, monkeypatch):
    monkeypatch.setenv("SKEIN_MAX_DEGREE", "2")
    assert run(capsys, "trace", "n=3: 1 2")[0] == EXIT_BOUND


def test_verify_pass_and_fail(capsys):
    code, data = run_json(capsys, "verify", "A1")
    assert code == EXIT_OK and data["pass"] is True
    code, data = run_json(capsys, "verify", "A5")
    assert code == EXIT_VERIFY and data["first_failure"]["suite"] == "A5"


def test_deterministic_bytes():
    cmd = [sys.executable, "-m", "annskein", "psi", "3.2.1.2"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")


@pytest.mark.parametrize("argv", [["trace", "n=3: 1 -2"], ["cube", "+-", "--N", "2"], ["solomon", "2"]])
def test_json_roundtrip(capsys, argv):
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    assert json.dumps(data, sort_keys=True) + "\n" == out
