import json
import subprocess
import sys

import pytest

from nag.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    data = json.loads(out)
    assert set(data) == {"command", "inputs", "seed", "result", "elapsed_ms"}
    assert data["command"] == argv[0]
    return data


def test_ramanujan(capsys):
    assert report(capsys, "ramanujan", "--n", "6", "--m", "3", "--oracle")["result"] == -2


def test_witt_commands(capsys):
    assert report(capsys, "witt-mul", "--f", "phi(4)", "--g", "phi(4)")["result"] == "2*phi(1) + 2*phi(2)"
    assert report(capsys, "witt-frob", "--m", "2^inf", "--f", "phi(12)")["result"]["value"] == "2*phi(3)"
    assert report(capsys, "witt-frob", "--m", "2", "--f", "phi(3)", "--adjoint")["result"]["value"] == "1*phi(3) + 1*phi(6)"
    assert report(capsys, "witt-lambda", "--k", "2", "--f", "4*phi(1)")["result"] == "6*phi(1)"
    form = report(capsys, "witt-pair", "--f", "phi(6)", "--g", "phi(6)")["result"]
    assert form == 2 or form == "2" or form.get("form") in (2, "2")


def test_witt_class(capsys):
    r = report(capsys, "witt-class", "--matrix", "2 2 ; 0 -1 ; 1 0")["result"]
    assert "phi(4)" in json.dumps(r)


def test_sigma(capsys):
    r = report(capsys, "sigma", "--m", "2", "--n", "3")["result"]
    assert "1 4 2 5 3 6" in json.dumps(r)


def test_zeta_starred_report(capsys):
    r = report(capsys, "zeta", "--mode", "Fstar_only", "--t", "2", "--N", "20")["result"]
    assert r["status"] == "open discrepancy"
    assert r["derived_adjoint_limit"]["re"] == 1.0
    assert abs(r["stated_target"]["re"] - 0.6079271018540267) < 1e-15


def test_zeta_identity(capsys):
    r = report(capsys, "zeta", "--mode", "identity_056", "--N", "500")["result"]
    assert r["rel_error"] < 0.02


def test_global_sections(capsys):
    r = report(capsys, "global-sections", "--n", "2", "--m", "2")["result"]
    assert r["count"] == 17 and r["equals_Fpm"] is True


def test_membership_and_gl(capsys):
    r = report(capsys, "membership", "--matrix", "1 1 ; 1/2", "--prop", "Zp:2,Zp:3,ZR")["result"]
    assert json.dumps(r).count("true") == 2
    assert report(capsys, "gl", "--prop", "Fpm", "--n", "3")["result"]["count"] == 48
    assert report(capsys, "gl", "--prop", "ZR", "--matrix", "2 2 ; 3/5 -4/5 ; 4/5 3/5")["result"]["in_GL"] is True


def test_residue_and_compose(capsys):
    r = report(capsys, "residue", "--matrix", "2 2 ; 1 0 ; 0 1/2")["result"]
    assert r["isometry"] == "Q: 2 2 ; 1 0 ; 0 0" and r["rank"] == 1
    r = report(capsys, "compose-pi", "--u", "Q: 2 2 ; 1 0 ; 0 0", "--v", "Q: 2 2 ; 0 1 ; 1 0")["result"]
    assert "2 2 ; 0 1 ; 0 0" in json.dumps(r)


def test_sections_kronecker_local_zeta_einstein(capsys):
    assert report(capsys, "sections", "--matrix", "1 1 ; 1/2", "--exclude", "2")["result"]["section"] is True
    assert "true" in json.dumps(report(capsys, "kronecker", "--matrix", "2 2 ; 0 -1 ; 1 0")["result"])
    r = report(capsys, "local-zeta", "--place", "p:3", "--s", "1", "--normalized")["result"]
    assert "1+0j" in json.dumps(r)
    assert "4/5" in json.dumps(report(capsys, "einstein", "--z1", "1/2", "--z2", "1/2")["result"])


def test_comm_and_axioms(capsys):
    r = report(capsys, "comm-check", "--law", "total", "--trials", "20")["result"]
    assert '"failures": 0' in json.dumps(r) or r.get("failures") == 0
    r = report(capsys, "comm-check", "--law", "total", "--carrier", "block2", "--trials", "20")["result"]
    assert r["failures"] > 0
    r = report(capsys, "axioms", "--carrier", "broken", "--samples", "8")["result"]
    assert "fail" in json.dumps(r)


@pytest.mark.parametrize(
    "argv",
    [
        ["global-sections", "--n", "0", "--m", "9"],
        ["membership", "--matrix", "1 1 ; 1", "--prop", "Zp:4"],
        ["ramanujan", "--n", "3"],
        ["no-such-command"],
        ["residue", "--matrix", "1 1 ; 2"],
        ["witt-lambda", "--k", "2", "--f=-1*phi(1)"],
        ["zeta", "--mode", "F_only", "--s", "1"],
        ["sigma", "--m", "0", "--n", "2"],
    ],
)
def test_precondition_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_precondition_message_names_command(capsys):
    code, _, err = run(capsys, "residue", "--matrix", "1 1 ; 2")
    assert err.startswith("nag residue: precondition violated:")


def test_table_format(capsys):
    code, out, _ = run(capsys, "ramanujan", "--n", "6", "--m", "3", "--format", "table")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("|")[0].strip() == "n"
    assert lines[-1].split("|")[-1].strip() == "-2"


def test_timing_fills_elapsed(capsys):
    code, out, _ = run(capsys, "sigma", "--m", "2", "--n", "2", "--timing")
    assert isinstance(json.loads(out)["elapsed_ms"], (int, float))


def test_byte_identical_reruns():
    cmd = [sys.executable, "-m", "nag", "comm-check", "--law", "total", "--trials", "30", "--seed", "4"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_negative_rational_values(capsys):
    r = report(capsys, "einstein", "--z1", "1/2+1/2i", "--z2", "-1/2", "--variant", "complex_a")
    assert r["result"] == "-1/5+3/5i"
    assert report(capsys, "einstein", "--z1", "-1/2", "--z2", "1/3")["result"] == "-1/5"
