import io
import json

from ccsym.cli import run_command


def run(argv):
    buf = io.StringIO()
    code = run_command(argv, stdout=buf)
    return code, buf.getvalue()


def test_symbol_cc_example():
    code, out = run(
        ["symbol", "cc", "--ring", "F3[e]/(e^2)", "--f", "1 - e*t^-1", "--g", "1 - t"]
    )
    assert code == 0 and out.strip() == "1+e"


def test_verify_reciprocity_example():
    code, out = run(
        ["verify", "reciprocity-ar", "--ring", "F3[e]/(e^2)", "--f", "(x - e)", "--g", "(x - 1)"]
    )
    assert code == 0
    assert "product/sum: 1" in out and out.strip().endswith("PASS")


def test_symbol_tame_and_kato():
    code, out = run(
        ["symbol", "tame", "--ring", "F7", "--f", "(x - 1) * (x - 2)^-1",
         "--g", "(x - 3)", "--at", "1"]
    )
    assert code == 0 and out.strip() == "3"
    code, out = run(
        ["symbol", "kato", "--ring", "F5", "--xprec", "3", "--f", "x * (z)", "--g", "(z^2)"]
    )
    assert code == 0 and out.strip() == "x^2"


def test_decompose_and_residue():
    code, out = run(["decompose", "--ring", "F5", "--f", "2 + 3*t + t^2 + O(t^3)"])
    assert code == 0
    assert "winding: 0" in out and "leading unit: 2" in out
    assert "{1: 1, 2: 2}" in out
    code, out = run(["residue", "--ring", "F3[e]/(e^2)", "--f", "t^-1*dt"])
    assert code == 0 and out.strip() == "1"
    code, out = run(["residue", "--ring", "F3[e]/(e^2)", "--f", "(t^-1)*de^dt"])
    assert code == 0 and out.strip() == "de"


def test_dlog2_verb():
    code, out = run(
        ["dlog2", "--ring", "F3[e]/(e^2)", "--f", "(1+e)*t", "--g", "2*t"]
    )
    assert code == 0 and "res2: de" in out


def test_verify_residue_sum():
    code, out = run(
        ["verify", "residue-sum", "--ring", "F3[e]/(e^2)", "--f", "de/(x - 1) - de/(x - 2)"]
    )
    assert code == 0 and out.strip().endswith("PASS")


def test_verify_dlog_square():
    code, out = run(
        ["verify", "dlog-square", "--ring", "F3[e]/(e^2)",
         "--f", "1 - t + O(t^9)", "--g", "1 - e*t^-1"]
    )
    assert code == 0 and "PASS" in out


def test_suite_determinism():
    args = ["suite", "dlog-square", "--ring", "F5[e]/(e^3)", "--cases", "20", "--seed", "7"]
    code1, out1 = run(args)
    code2, out2 = run(args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_suite_json_schema():
    code, out = run(
        ["suite", "weil", "--cases", "8", "--seed", "3", "--format", "json"]
    )
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"suite", "config", "cases", "failures", "elapsed_ms"}
    assert data["failures"] == 0 and len(data["cases"]) == 8
    for case in data["cases"]:
        assert set(case) == {"inputs", "expected", "actual", "pass"}
        assert case["pass"] is True


def test_suite_report_file(tmp_path):
    target = tmp_path / "report.json"
    code, out = run(
        ["suite", "lemma35", "--cases", "6", "--seed", "1", "--format", "json",
         "--out", str(target)]
    )
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["suite"] == "lemma35" and data["failures"] == 0


def test_parse_error_exit_code():
    code, _ = run(["symbol", "cc", "--ring", "F3[e]/(e^2)", "--f", "1 + q", "--g", "t"])
    assert code == 2


def test_constant_reciprocity():
    code, out = run(
        ["verify", "reciprocity-ar", "--ring", "F3[e]/(e^2)", "--f", "1+e", "--g", "2"]
    )
    assert code == 0 and "product/sum: 1" in out
