import json
import subprocess
import sys

import pytest

from eqpieri.cli import main, run
from eqpieri.perm import Permutation
from eqpieri.pieri import pieri_coefficient
from eqpieri.poly import parse, t

EX = ["--n", "9", "--m", "3", "--w", "631594287", "--u", "839154267"]


def test_coeff_text_example():
    status, out = run(["coeff", "--p", "4", *EX])
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "(t6 - t1) + (t8 - t2)"
    assert lines[1] == "= -t1 - t2 + t6 + t8"
    assert lines[2].startswith("d-basis: ")


def test_coeff_q_zero():
    assert run(["coeff", "--p", "3", *EX]) == (0, "1")


def test_coeff_zero():
    status, out = run(["coeff", "--n", "9", "--m", "3", "--p", "4",
                       "--w", "631594287", "--u", "859134267"])
    assert (status, out) == (0, "0")


def test_coeff_json():
    status, out = run(["coeff", "--p", "6", *EX, "--format", "json"])
    data = json.loads(out)
    assert status == 0 and data["q"] == 3 and data["nonzero"]
    assert data["summands"] == "(t3 - t1)(t6 - t1)(t8 - t1)"
    assert parse(data["coefficient"]) == (t(3) - t(1)) * (t(6) - t(1)) * (t(8) - t(1))


@pytest.mark.parametrize("argv", [
    ["coeff", "--m", "3", "--p", "4", "--w", "631594287"],
    ["coeff", "--m", "3", "--p", "9", "--w", "631594287", "--u", "839154267"],
    ["coeff", "--m", "3", "--p", "4", "--w", "6315942", "--u", "839154267"],
    ["coeff", "--n", "8", "--m", "3", "--p", "4", "--w", "631594287", "--u", "839154267"],
    ["expand", "--m", "0", "--p", "1", "--w", "123"],
    ["verify", "--n", "9"],
    ["verify"],
])
def test_domain_errors(argv):
    status, out = run(argv)
    assert status == 1 and out.startswith("error:")


def test_parser_errors_exit_one():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 1


def test_expand_then_coeff_agree():
    status, out = run(["expand", "--m", "3", "--p", "5", "--w", "631594287", "--format", "json"])
    data = json.loads(out)
    assert status == 0 and data["terms"]
    w = Permutation.parse("631594287")
    for term in data["terms"]:
        s2, out2 = run(["coeff", "--m", "3", "--p", "5", "--w", "631594287", "--u", term["u"],
                        "--format", "json"])
        assert json.loads(out2)["coefficient"] == term["coefficient"]
        assert parse(term["coefficient"]) == pieri_coefficient(w, Permutation.parse(term["u"]), 3, 5)


def test_deterministic_output():
    argv = ["expand", "--m", "2", "--p", "2", "--w", "31524", "--format", "json"]
    assert run(argv) == run(argv)


def test_classical():
    status, out = run(["classical", "--m", "3", "--p", "3", "--w", "631594287", "--format", "json"])
    data = json.loads(out)
    assert status == 0
    assert {"u": "839154267", "coefficient": 1} in data["terms"]
    assert all(t["coefficient"] == 1 for t in data["terms"])


def test_verify_n4():
    status, out = run(["verify", "--n", "4"])
    report = json.loads(out)
    assert status == 0
    assert report["mismatches"] == [] and report["triples_checked"] == 144


def test_verify_mismatch_exit_status(monkeypatch):
    from eqpieri import pieri
    real = pieri.pieri_coefficient
    monkeypatch.setattr(pieri, "pieri_coefficient",
                        lambda w, u, m, p: real(w, u, m, p) * 2)
    status, out = run(["verify", "--n", "3", "--format", "text"])
    assert status == 2 and "mismatches" in out


def test_verify_sample_text():
    status, out = run(["verify", "--n", "5", "--sample", "5", "--seed", "3", "--format", "text"])
    assert status == 0 and out.endswith("ok") and "triples=5" in out


def test_main_streams(capsys):
    assert main(["coeff", "--p", "3", *EX]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert main(["coeff", "--p", "3"]) == 1
    assert "error" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "eqpieri.cli", "coeff", "--p", "4", *EX],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "(t6 - t1) + (t8 - t2)"
