import json
import subprocess
import sys

import pytest

from boussinesq.cli import main, parse_etas
from boussinesq.state import EtaFactor, LinComb, UState


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce_printed_u2(capsys):
    code, out, _ = run(capsys, "reduce", "--genus", "3", "--dn", "-1", "--m", "0",
                       "--dp", "0", "--etas", "0:1,0:1")
    assert code == 0
    assert out == "(k+1)/120960 · <m=0, shift=-8, r=0>\n"


def test_reduce_zero(capsys):
    code, out, _ = run(capsys, "reduce", "--genus", "1", "--dn", "0", "--m", "1",
                       "--dp", "0", "--etas", "1:1")
    assert (code, out) == (0, "0\n")


def test_reduce_inapplicable(capsys):
    code, out, err = run(capsys, "reduce", "--genus", "2", "--dn", "0", "--m", "0",
                         "--dp", "0", "--etas", "")
    assert code == 1
    assert "recursion inapplicable: no eta insertions at positive genus" in err


def test_reduce_json_round_trips(capsys):
    code, out, _ = run(capsys, "reduce", "--genus", "3", "--dn", "0", "--m", "1",
                       "--dp", "0", "--etas", "0:1,0:1,0:1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert UState.from_json(data["state"]) == UState(3, 0, 1, 0, (EtaFactor(0, 1),) * 3)
    value = LinComb.from_json(data["value"])
    assert str(value) == "(36k+37)/272160 · <m=1, shift=-8, r=0>"
    assert value.dumps() == json.dumps(data["value"])


@pytest.mark.parametrize("argv", [
    ["reduce", "--genus", "-1", "--dn", "0", "--m", "0", "--dp", "0", "--etas", "0:1"],
    ["reduce", "--genus", "1", "--dn", "0", "--m", "0", "--dp", "0", "--etas", "2:1"],
    ["reduce", "--genus", "1", "--dn", "0", "--m", "0", "--dp", "0", "--etas", "0:0"],
    ["reduce", "--genus", "1", "--dn", "0", "--m", "0", "--dp", "0", "--etas", "01"],
    ["reduce", "--genus", "1", "--dn", "x", "--m", "0", "--dp", "0", "--etas", "0:1"],
    ["theorem1", "--m", "2"],
    ["verify", "--interp-samples", "8"],
    ["verify", "--interp-samples", "8,a"],
    ["verify", "--format", "xml"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_etas_order_insensitive():
    assert parse_etas("1:2,0:1") == parse_etas("0:1,1:2") == (EtaFactor(0, 1), EtaFactor(1, 2))
    assert parse_etas("  ") == ()


def test_theorem1_text(capsys):
    code, out, _ = run(capsys, "theorem1", "--m", "0")
    assert code == 0
    assert out.splitlines() == [
        "(k+1)/5184 · <m=0, shift=-8, r=0>",
        "⟨τ⟩₃ = (k+1)/31104 · <m=0, shift=-8, r=0>",
    ]


def test_theorem1_json(capsys):
    code, out, _ = run(capsys, "theorem1", "--m", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["m"] == 1
    assert data["theorem1"] == [{"key": {"m": 1, "shift": -8, "r": 0},
                                 "coeff": [{"deg": 0, "coeff": "1/5184"},
                                           {"deg": 1, "coeff": "1/5184"}]}]
    assert str(LinComb.from_json(data["genus3"])) == "(k+1)/31104 · <m=1, shift=-8, r=0>"


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "446/41803776" in out and "4463/41803776" in out
    assert "FAIL" not in out


def test_verify_json_byte_stable(capsys):
    first = run(capsys, "verify", "--format", "json", "--interp-samples", "8,9,10")
    second = run(capsys, "verify", "--format", "json")
    assert first == second
    assert first[0] == 0
    assert all(c["status"] == "pass" for c in json.loads(first[1])["checks"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "boussinesq", "theorem1", "--m", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("(k+1)/5184")
