import subprocess
import sys

import pytest

from saddlecoef.cli import eval_int_formula, main, parse_m_grid
from saddlecoef.errors import InputError

EX1 = "3: 1/3; 4: 1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_formulas():
    assert eval_int_formula("m^25", 2) == 2 ** 25
    assert eval_int_formula("3*(m^6//3)", 2) == 63
    assert eval_int_formula("100") == 100
    for bad in ("m", "__import__('os')", "2**100", "m.x"):
        with pytest.raises(InputError):
            eval_int_formula(bad)
    assert parse_m_grid("2..4") == [2, 3, 4]
    assert parse_m_grid("5,7") == [5, 7]
    assert parse_m_grid(None) == [None]


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", EX1)
    assert code == 0 and "eps0" in out and "1/4" in out


def test_analyze_file(tmp_path, capsys):
    p = tmp_path / "ex3.txt"
    p.write_text("# ex3\n9: 1/9\n15: 1\n25: 1\n")
    code, out, _ = run(capsys, "--csv", "analyze", str(p))
    assert code == 0
    assert "l_j,15 15 25 15" in out and "eps0,16/25" in out


def test_exact(capsys):
    code, out, _ = run(capsys, "exact", EX1, "--n", "20", "--k", "12")
    assert code == 0 and "32395/27" in out


def test_exact_budget(capsys):
    code, _, err = run(capsys, "exact", EX1, "--n", "5000", "--k", "2000")
    assert code == 3 and "budget" in err


def test_estimate_grid(capsys):
    code, out, _ = run(capsys, "--csv", "estimate", "9: 1/9; 15: 1; 25: 1", "--n", "m^15",
                       "--k", "m^6", "--m", "2..3", "--delta", "2/5")
    assert code == 0
    m2, m3 = out.split("\n\n")
    assert m2.startswith("# estimate n=32768 k=64 (m=2)")
    assert "upper_bound_only,true" in m2 and "estimate_log," in m2.splitlines()
    assert "upper_bound_only,false" in m3 and "gamma_mode,limit" in m3


def test_estimate_expand_csv(capsys):
    code, out, _ = run(capsys, "--csv", "estimate", EX1, "--n", "4096", "--k", "64",
                       "--expand", "2")
    assert code == 0
    assert "c_1," in out and "expansion_valid,true" in out


def test_expand(capsys):
    code, out, _ = run(capsys, "--csv", "expand", EX1, "--n", "1024", "--k", "32", "--N", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "m,n,k,r,nu,c_nu,valid"
    assert len(lines) == 5


def test_verify(capsys):
    code, out, _ = run(capsys, "--csv", "verify", EX1, "--n", "m^4", "--k", "m", "--m", "9,12")
    assert code == 0
    rows = [r.split(",") for r in out.splitlines()[2:]]
    assert len(rows) == 2
    assert all(float(r[5]) < 1e-8 for r in rows)


def test_verify_quadrature_validated(capsys):
    code, _, err = run(capsys, "verify", EX1, "--n", "20", "--k", "12", "--quadrature", "10")
    assert code == 2 and "4k" in err


def test_psi_scan(capsys):
    code, out, _ = run(capsys, "psi-scan", "15: 1; 20: 1; 21: 1", "--u", "21", "--t-max", "5")
    assert code == 0 and "overall min" in out


@pytest.mark.parametrize("argv, code", [
    (["analyze", "3: 0"], 2),
    (["estimate", EX1, "--n", "10", "--k", "40"], 2),
    (["estimate", "3: 1/3; 4: -1", "--n", "100", "--k", "9"], 3),
    (["exact", EX1, "--n", "0", "--k", "3"], 2),
    (["example", "1", "--scale", "500"], 3),
    (["psi-scan", EX1, "--u", "5"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_output_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert main(["--csv", "-o", str(p), "example", "4", "--scale", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("# example 4")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "saddlecoef", "example", "3", "--b", "1/2",
                          "--c", "2", "--scale", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "-5/6" in res.stdout and "-50/9" in res.stdout
