import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

import ffext.formulas as formulas
from ffext.cli import dumps, run


def invoke(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def test_constant_example():
    code, text = invoke("constant", "--surface", "p2", "--p", "3", "--exponent", "4")
    assert code == 0
    report = json.loads(text)
    assert report["pass"] is True
    assert report["field"] == {"p": 3, "n": 1, "q": 3, "modulus": report["field"]["modulus"]}
    values = {r["name"]: r for r in report["results"]}
    assert any(abs(r["claimed"] - (11 / 9) ** 0.25) < 1e-12 for r in values.values()
               if isinstance(r["claimed"], float))
    assert all(r["pass"] for r in report["results"])


def test_first_variation_suite_example():
    code, text = invoke("verify", "--suite", "theorem6", "--max-q", "7")
    assert code == 0
    names = [r["name"] for r in json.loads(text)["results"]]
    for p in (3, 5, 7):
        assert any(f"p={p} sign" in n for n in names)


def test_convolve_example():
    code, text = invoke("convolve", "--surface", "p1", "--p", "5", "--k", "3", "--route", "both")
    assert code == 0
    results = json.loads(text)["results"]
    assert len(results) == 25
    values = {r["computed"] for r in results}
    assert values == {"1/5", "6/5"}
    assert all(abs(float(Fraction(r["computed"])) - r["fourier"]) < 1e-9 for r in results)


def test_json_round_trip_is_byte_identical():
    for argv in (["constant", "--surface", "gamma3", "--p", "3", "--exponent", "4"],
                 ["convolve", "--surface", "h2", "--p", "3", "--k", "2"],
                 ["maximizer", "--surface", "p2", "--p", "5", "--a", "1", "--b", "2", "--c", "3", "--lambda", "0.3,-1.7"],
                 ["search", "--surface", "upsilon3", "--p", "3", "--exponent", "4", "--restarts", "1", "--steps", "5"]):
        code, text = invoke(*argv)
        assert code == 0, argv
        assert dumps(json.loads(text)) + "\n" == text


def test_prime_power_report_states_modulus():
    code, text = invoke("constant", "--surface", "p2", "--p", "3", "--n", "2", "--exponent", "4")
    assert code == 0
    assert json.loads(text)["field"]["modulus"] == "x^2 + 1"


def test_csv_and_table():
    code, text = invoke("convolve", "--surface", "p2", "--p", "3", "--k", "2", "--format", "csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "target,claimed,computed,gap,pass"
    assert len(lines) == 28
    code, text = invoke("constant", "--surface", "h2", "--p", "5", "--exponent", "4", "--format", "table")
    assert code == 0 and "ok" in text


def test_unknown_constant_is_reported_not_failed():
    code, text = invoke("convolve", "--surface", "gamma3", "--p", "3", "--k", "2", "--route", "count")
    assert code == 0
    assert all(r["claimed"] == "unknown" for r in json.loads(text)["results"])


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["constant", "--surface", "p9", "--p", "3", "--exponent", "4"],
    ["constant", "--surface", "p2", "--p", "4", "--exponent", "4"],
    ["constant", "--surface", "p2", "--p", "3", "--exponent", "5"],
    ["maximizer", "--surface", "p2", "--p", "7"],
    ["maximizer", "--surface", "p2", "--p", "5", "--lambda", "1"],
    ["constant", "--surface", "upsilon3", "--p", "3", "--exponent", "4"],
])
def test_argument_errors_exit_two(argv, capsys):
    code, _ = invoke(*argv)
    assert code == 2


def test_corrupted_constant_exits_one(monkeypatch):
    real = formulas.sharp_constant_power

    def corrupt(s, exponent):
        return real(s, exponent) + Fraction(1, 10**6)

    monkeypatch.setattr(formulas, "sharp_constant_power", corrupt)
    code, text = invoke("constant", "--surface", "p2", "--p", "5", "--exponent", "4")
    assert code == 1
    assert json.loads(text)["pass"] is False


def test_corrupted_convolution_exits_one(monkeypatch):
    real = formulas.predicted_conv

    def corrupt(s, k):
        f = real(s, k)
        return lambda pt: f(pt) + (Fraction(1, 7) if not any(int(c) for c in pt) else 0)

    monkeypatch.setattr(formulas, "predicted_conv", corrupt)
    code, _ = invoke("convolve", "--surface", "p2", "--p", "5", "--k", "2")
    assert code == 1
    code, _ = invoke("verify", "--suite", "convolutions", "--max-q", "5")
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ffext", "constant", "--surface", "p1", "--p", "7",
                           "--exponent", "6", "--format", "table"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "FAIL" not in proc.stdout


def test_reports_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    from pathlib import Path
    schema = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())
    for argv in (["constant", "--surface", "p2", "--p", "3", "--exponent", "4"],
                 ["convolve", "--surface", "p1", "--p", "5", "--k", "3"],
                 ["verify", "--suite", "lemmas", "--max-q", "5"],
                 ["search", "--surface", "gamma3-full", "--p", "3", "--exponent", "4", "--steps", "3", "--restarts", "1"]):
        _, text = invoke(*argv)
        jsonschema.validate(json.loads(text), schema)
