import json
import subprocess
import sys
from pathlib import Path

import pytest

from resint.cli import main

MAPS_DIR = Path(__file__).resolve().parent.parent / "maps"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def envelope(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["tool"]["name"] == "resint"
    assert set(doc) == {"schema", "tool", "command", "request", "result", "timing"}
    return code, doc


def test_analyze_excluded(capsys):
    code, doc = envelope(capsys, "analyze", str(MAPS_DIR / "planar_cubic.map"), "--expect", "Excluded")
    assert code == 0 and doc["result"]["kind"] == "Excluded"


def test_unmet_expectation_exits_1(capsys):
    code, _ = run(capsys, "analyze", str(MAPS_DIR / "rotation.map"), "--expect", "Excluded")
    assert code == 1


def test_analyze_with_constraint_text(capsys):
    code, out = run(capsys, "analyze", str(MAPS_DIR / "xy_family.map"), "--param-constraint", "a > 9/8")
    assert code == 0
    for v in ("3/2", "9/4", "9/2"):
        assert v in out


def test_certificate_is_included_on_request(capsys):
    _, doc = envelope(capsys, "analyze", str(MAPS_DIR / "planar_cubic.map"), "--certificate")
    names = [e["name"] for e in doc["result"]["certificate"]]
    assert "U_sel" in names


@pytest.mark.parametrize(
    "argv",
    [
        ("analyze", "/nonexistent/map.map"),
        ("analyze", str(MAPS_DIR / "xy_family.map"), "--param-constraint", "a >> 2"),
        ("verify", str(MAPS_DIR / "f6.map"), "--integral", "x +* y"),
        ("resonance", str(MAPS_DIR / "f6.map"), "--fixed-point", "1,x"),
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_argparse_errors_exit_2(capsys):
    assert main(["analyze"]) == 2
    assert main(["analyze", "x.map", "--order", "zz"]) == 2


def test_verify(capsys):
    code, doc = envelope(capsys, "verify", str(MAPS_DIR / "lyness.map"), "--integral", "x^2*y^2 - c*x*y",
                         "--orbit", "1/2,3", "--param", "c=2", "--exact")
    assert code == 0
    code, _ = run(capsys, "verify", str(MAPS_DIR / "lyness.map"), "--integral", "x")
    assert code == 1


def test_resonance_and_cyclo(capsys):
    code, doc = envelope(capsys, "resonance", str(MAPS_DIR / "diag235.map"), "--fixed-point", "0,0,0")
    assert code == 0 and doc["result"]["fixed_points"][0]["bound"] == 0
    code, doc = envelope(capsys, "cyclo", "--p", "8")
    assert doc["result"]["Phi"] == "x^4 + 1" and doc["result"]["M"] == "2*x^2 - 1"


def test_reproduce_is_deterministic():
    def once():
        out = subprocess.run([sys.executable, "-m", "resint.cli", "reproduce-paper", "--json"],
                             capture_output=True, text=True, check=True).stdout
        doc = json.loads(out)
        doc.pop("timing")
        return json.dumps(doc, sort_keys=True)

    assert once() == once()


def test_corrupt_mode_names_the_check(capsys):
    code, out = run(capsys, "reproduce-paper", "--only", "todd_p4", "--corrupt", "todd_p4")
    assert code == 1
    assert "todd_p4" in out and "FAIL" in out
