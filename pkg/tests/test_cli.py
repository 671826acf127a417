import json

import pytest

from inertlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_seq_golden(capsys):
    code, out = run(capsys, "seq", "--disc", "-4", "--count", "6")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "seq"
    assert [r["prime"] for r in report["records"]] == [3, 7, 11, 19, 23, 31]
    assert report["verdict"] == "pass"
    assert report["version"]


def test_json_output_is_deterministic(capsys):
    _, first = run(capsys, "seq", "--disc", "5", "--count", "8")
    _, second = run(capsys, "seq", "--disc", "5", "--count", "8")
    strip = lambda text: json.dumps(
        {k: v for k, v in json.loads(text).items() if k != "timing"}
    )
    assert strip(first) == strip(second)


def test_turning_index(capsys):
    code, out = run(capsys, "turning-index", "--disc", "-12")
    assert code == 0
    record = json.loads(out)["records"][0]
    assert record["index"] == 1
    assert record["Q_n"] == 5 and record["Q_n1"] == 55


def test_verify_thm1(capsys):
    code, out = run(capsys, "verify", "thm1", "--disc", "-12", "--max-i", "20")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "pass"
    assert all(r["holds"] for r in report["records"])


def test_verify_lemma22_exception_still_passes(capsys):
    code, out = run(capsys, "verify", "lemma22", "--disc", "-4")
    assert code == 0
    record = json.loads(out)["records"][0]
    assert record["exception"] and not record["holds"]


def test_verify_lemma23_and_panaitopol(capsys):
    code, _ = run(capsys, "verify", "lemma23", "--disc", "8", "--max-i", "10")
    assert code == 0
    code, out = run(capsys, "verify", "panaitopol", "--ell", "2", "--max-n", "30")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_scan_lemma22_neg(capsys):
    code, out = run(capsys, "scan", "lemma22-neg", "--max-d", "1000")
    assert code == 0
    report = json.loads(out)
    assert [r["D"] for r in report["records"]] == [
        -24, -20, -19, -16, -15, -12, -11, -8, -7, -4, -3,
    ]
    assert report["parameters"]["expected"] == [r["D"] for r in report["records"]]


def test_scan_falsified_expectation_is_anomaly(capsys):
    code = main(
        ["scan", "lemma22-neg", "--max-d", "100", "--expect=-3,-4"]
    )
    assert code == 3
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "anomaly"


def test_scan_small_pairs(capsys):
    code, out = run(
        capsys,
        "scan", "small-pairs",
        "--min-d", "-10", "--max-d", "-4", "--q1", "2", "--q2", "5",
    )
    assert code == 0
    report = json.loads(out)
    assert report["records"] == [] and report["parameters"]["expected"] == []


def test_scan_lemma22_pos(capsys):
    code, out = run(capsys, "scan", "lemma22-pos", "--max-d", "5000")
    assert code == 0
    assert [r["D"] for r in json.loads(out)["records"]] == [5, 8, 12]


def test_ternary_analyze(capsys):
    code, out = run(capsys, "ternary", "analyze", "--form", "1,1,11")
    assert code == 0
    record = json.loads(out)["records"][0]
    assert record["verdict"] == "irregular_with_witness"
    assert record["witness"] == 3
    assert record["witness_is_inert_for"] == -4


def test_ternary_witness_not_found_is_fail(capsys):
    code, out = run(
        capsys, "ternary", "witness", "--form", "1,1,3", "--bound", "200"
    )
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_ternary_mod8(capsys):
    code, out = run(capsys, "ternary", "mod8", "--form", "1,1,21")
    assert code == 0
    rows = {r["n"]: r["solvable"] for r in json.loads(out)["records"]}
    assert rows == {1: True, 3: False, 5: True, 7: True}


def test_usage_errors(capsys):
    assert main(["seq"]) == 2  # missing --disc
    capsys.readouterr()
    assert main(["nonsense"]) == 2
    capsys.readouterr()
    assert main(["seq", "--disc", "7"]) == 2  # invalid discriminant
    capsys.readouterr()


def test_csv_output(capsys):
    code, out = run(
        capsys, "seq", "--disc", "-4", "--count", "3", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "index,prime,partial_product"
    assert lines[1] == "1,3,3"
    assert len(lines) == 4


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["seq", "--disc", "-4", "--count", "3", "--out", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    report = json.loads(target.read_text(encoding="utf-8"))
    assert [r["prime"] for r in report["records"]] == [3, 7, 11]


def test_env_override(monkeypatch, capsys):
    monkeypatch.setenv("INERTLAB_FORMAT", "csv")
    code, out = run(capsys, "seq", "--disc", "-4", "--count", "2")
    assert code == 0
    assert out.splitlines()[0] == "index,prime,partial_product"
    # Explicit flag wins over the environment.
    code, out = run(
        capsys, "seq", "--disc", "-4", "--count", "2", "--format", "json"
    )
    assert json.loads(out)["command"] == "seq"
