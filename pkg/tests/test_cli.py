import json
import subprocess
import sys

from holored.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "--operator", "domb_m-32")
    assert code == 0
    assert "d=3" in out and "R_L=∅" in out and "coprime-check: pass" in out


def test_analyze_file(capsys, tmp_path):
    f = tmp_path / "domb_m-32.json"
    f.write_text(json.dumps({"var": "n", "coeffs": ["(n+1)^3", "(2*n+3)*(5*n^2+15*n+12)",
                                                    "16*(n+2)^3"]}))
    code, out, _ = run(capsys, "analyze", "--operator", str(f), "--json")
    rec = json.loads(out)
    assert code == 0 and rec["d"] == 3 and rec["R_L"] == [] and rec["coprime_check"] is True


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--operator", "franel.json", "--poly", "27*k^2*(3*k+1)")
    assert code == 0
    assert out.splitlines() == ["cs={2: -3, 0: -1}", "residual 0"]
    code, out, _ = run(capsys, "reduce", "--operator", "domb_m-32", "--json",
                       "--poly", "n^2*(n-1)*(9*n+1)")
    rec = json.loads(out)
    assert rec["cs"] == {"1": "1/3"} and rec["residual"] == "2*n+2/3"


def test_adjoint(capsys):
    code, out, _ = run(capsys, "adjoint", "--operator", "franel", "--poly", "1")
    assert code == 0 and out.strip() == "L*(1) = -9*k-6"


def test_telescope(capsys):
    code, out, _ = run(capsys, "telescope", "--operator", "franel", "--sequence",
                       "franel_signed", "--normalize")
    assert code == 0 and "-k^2*(8*p(k-1)*F(k-1)+p(k-2)*F(k))" in out and "pass" in out


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "--seed", "domb_m-32", "--poly", "n^2")
    assert code == 0
    assert out.splitlines()[0] == "sum_{n>=0} (9n^4-8n^3-n^2) * Domb(n)/(-32)^n = 4/(3*pi)"


def test_guess_and_seq(capsys):
    code, out, _ = run(capsys, "guess", "--sequence", "delannoy", "--order", "2", "--degree", "1")
    assert code == 0 and out.strip() == "(k+2)σ^2 + (-6*k-9)σ + (k+1)"
    code, out, _ = run(capsys, "seq", "franel4", "-n", "5")
    assert out.split() == ["1", "2", "18", "164", "1810"]
    code, out, _ = run(capsys, "guess", "--sequence", "domb", "--order", "1", "--degree", "1")
    assert code == 1


def test_verify_series(capsys):
    code, out, _ = run(capsys, "verify-series", "--seed", "franel4_m5776", "-N", "60", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["pass"] and rec["target"] == "76*sqrt(95)/(5*pi)"
    code, out, _ = run(capsys, "verify-series", "--seed", "domb_m64", "-N", "10")
    assert code == 1 and "too small" in out


def test_verify_congruence(capsys, tmp_path):
    code, out, _ = run(capsys, "verify-congruence")
    assert code == 0 and out.count("pass") == 8
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "bad", "sequence": "franel_signed", "var": "k",
                               "weight": "3*k+2", "modulus": {"poly": "4*n^2"},
                               "range": [1, 30]}))
    code, out, _ = run(capsys, "verify-congruence", "--claims", str(bad), "--json")
    assert code == 1 and len(out.splitlines()) < 30
    code, out, _ = run(capsys, "verify-congruence", "--claims", str(bad), "--json",
                       "--exhaustive")
    assert code == 1 and len(out.splitlines()) == 30
    code, out, _ = run(capsys, "verify-congruence", "--known-facts", "--prime-range", "5:40")
    assert code == 0
    code, out, _ = run(capsys, "verify-congruence", "--family", "--random", "3",
                       "--operator", "delannoy", "--sequence", "delannoy", "--n-range", "1:100")
    assert code == 0 and out.count("pass") == 3


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert "FAIL" not in out


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "analyze")[0] == 2
    assert run(capsys, "analyze", "--operator", "no_such_thing")[0] == 2
    code, _, err = run(capsys, "reduce", "--operator", "franel", "--poly", "k^-1")
    assert code == 2 and "position 2" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"var": "n", "coeffs": ["n+1",\n "n"')
    code, _, err = run(capsys, "analyze", "--operator", str(broken))
    assert code == 2 and "line 2" in err
    badpoly = tmp_path / "badpoly.json"
    badpoly.write_text('{"var": "n", "coeffs": ["n+", "1"]}')
    code, _, err = run(capsys, "analyze", "--operator", str(badpoly))
    assert code == 2 and "position" in err
    assert run(capsys, "verify-series", "--seed", "domb_m64", "--digits", "10")[0] == 2
    assert run(capsys, "verify-congruence", "--n-range", "9:3")[0] == 2


def test_generate_failures(capsys, tmp_path):
    code, _, err = run(capsys, "generate", "--seed", "domb_m-32", "--poly", "3")
    assert code == 2 and "nonconstant" in err
    seed = tmp_path / "degenerate.json"
    seed.write_text(json.dumps({"operator": {"var": "n", "coeffs": ["-(n-2)", "n"]},
                                "weight": "n+1", "lambda": "1"}))
    code, _, err = run(capsys, "generate", "--seed", str(seed), "--poly", "n^2")
    assert code == 1 and "degenerated" in err


def test_output_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for f in (a, b):
        assert main(["verify-congruence", "--json", "--output", str(f)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert all(json.loads(line) for line in a.read_text().splitlines())


def test_digits_env(capsys, monkeypatch):
    monkeypatch.setenv("HOLORED_DIGITS", "15")
    assert run(capsys, "verify-series", "--seed", "domb_m64")[0] == 2
    monkeypatch.setenv("HOLORED_DIGITS", "40")
    code, out, _ = run(capsys, "verify-series", "--seed", "domb_m64", "--tol", "1e-35", "--json")
    assert code == 0


def test_module_entry():
    out = subprocess.run([sys.executable, "-m", "holored", "analyze", "--operator", "franel"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "d=1" in out.stdout
