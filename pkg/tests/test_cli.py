import json
import warnings

import pytest

from parityforge.cli import main


def run(capsys, *argv):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # large stage-2 moduli warn by design
        code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def jsonl(out):
    return [json.loads(line) for line in out.splitlines() if line]


def test_theorems_listing(capsys):
    code, out, _ = run(capsys, "theorems")
    assert code == 0
    for tid in ("T1", "T6", "T9a", "T12a", "T13a"):
        assert any(line.startswith(tid) for line in out.splitlines())
    code, out, _ = run(capsys, "theorems", "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 13
    assert rows[0]["id"] == "T1" and rows[0]["statistic"] == "big_omega"


def test_construct_text_output(capsys):
    code, out, _ = run(capsys, "construct", "T1", "-A", "4", "--verify")
    assert code == 0
    assert "claim: big_omega = 4 at shift 1" in out
    assert "base: 4*m+1, 5*m+1, 6*m+1" in out
    assert "constraint: m = 8 (mod 77)" in out
    assert "reduced: 28*m+3, 385*m+41, 66*m+7" in out
    assert "C: 11" in out
    assert "tags: eq 54, eq 55, eq 57, eq 59" in out
    checks = [line for line in out.splitlines() if line.startswith("check ")]
    assert checks and all(": ok" in line for line in checks)


def test_construct_json_is_canonical_and_repeatable(capsys):
    code, out1, _ = run(capsys, "construct", "T8a", "-n", "30", "--json", "--verify")
    assert code == 0
    code, out2, _ = run(capsys, "construct", "T8a", "-n", "30", "--json", "--verify")
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["schema"] == "parity-forge/1"
    assert doc["params"] == {"A": None, "n": 30, "target": "pattern"}
    assert all(doc["checks"].values())
    # Canonical form: sorted keys, no spaces.
    assert out1.strip() == json.dumps(doc, sort_keys=True, separators=(",", ":"))


def test_construct_exit_codes(capsys):
    code, _, err = run(capsys, "construct", "T13a", "-n", "5")
    assert code == 3 and "error:" in err
    code, _, err = run(capsys, "construct", "T1")
    assert code == 2
    code, _, err = run(capsys, "construct", "T8a", "-n", "3")
    assert code == 2
    code, _, err = run(capsys, "construct", "T12a", "-n", "105", "--target", "omega", "--q", "8777")
    assert code == 2 and "--case" in err


def test_construct_stage2_via_explicit_anchor(capsys):
    code, out, _ = run(
        capsys,
        "construct", "T12a", "-n", "105", "--target", "omega",
        "--case", "2", "--q", "8777", "--json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["case"] == "stage2-2"
    assert doc["claim"] == {"statistic": "omega", "value": 6, "shift": 105}


def test_construct_stage2_via_search(capsys):
    code, out, _ = run(
        capsys,
        "construct", "T12a", "-n", "105", "--target", "omega",
        "--bound", "20", "--json",
    )
    assert code == 0
    assert json.loads(out)["case"] == "stage2-2"  # first hit below 20 is the case-2 pair
    code, _, err = run(
        capsys,
        "construct", "T12a", "-n", "105", "--target", "omega",
        "--case", "3", "--bound", "20",
    )
    assert code == 4 and "no stage-1 pair" in err


def test_witness_jsonl_and_summary(capsys):
    code, out, err = run(capsys, "witness", "T2", "-A", "3", "--bound", "1000", "--limit", "3")
    assert code == 0
    rows = jsonl(out)
    assert len(rows) == 3
    assert rows[0]["kind"] == "witness"
    assert rows[0]["x"] == 434 and rows[0]["x_plus_n"] == 435
    assert rows[0]["x_factors"] == [[2, 1], [7, 1], [31, 1]]
    assert "witnesses: 3" in err and "C=3" in err


def test_witness_exhausted_range(capsys):
    code, out, err = run(capsys, "witness", "T2", "-A", "3", "--bound", "20")
    assert code == 4
    assert not out.strip()
    assert "witnesses: 0" in err


def test_witness_deterministic_across_workers(capsys):
    args = ("witness", "T2", "-A", "3", "--bound", "60000", "--limit", "50")
    _, out1, _ = run(capsys, *args, "--workers", "1")
    _, out4, _ = run(capsys, *args, "--workers", "4")
    assert out1 == out4
    _, out_seg, _ = run(capsys, *args, "--segment", "4096")
    assert out1 == out_seg


def test_witness_overflowing_search_range_is_a_domain_error(capsys):
    code, _, err = run(
        capsys,
        "witness", "T12a", "-n", "105", "--target", "d",
        "--case", "3", "--q", "30959",
    )
    assert code == 2 and "64-bit" in err


def test_scan_text_and_json(capsys):
    code, out, _ = run(capsys, "scan", "--statistic", "big_omega", "--value", "4", "--limit", "200")
    assert code == 0
    assert out.splitlines()[0] == "135 136"
    code, out, _ = run(
        capsys, "scan", "--statistic", "d", "--value", "6", "--shift", "2", "--limit", "60", "--json"
    )
    doc = json.loads(out)
    assert doc["matches"][:2] == [18, 50]
    code, out, _ = run(
        capsys, "scan", "--statistic", "pattern", "--value", "2,1", "--shift", "2", "--limit", "50"
    )
    assert out.splitlines()[0] == "18 20"
    code, _, err = run(capsys, "scan", "--statistic", "omega", "--value", "2,x", "--limit", "50")
    assert code == 2


def test_hyp_t(capsys):
    code, out, _ = run(capsys, "hyp-t", "105", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pair"] == [11, 13] and doc["strong"]
    code, out, _ = run(capsys, "hyp-t", "15")
    assert code == 0 and "(5,7)" in out and "ordinary" in out
    code, _, err = run(capsys, "hyp-t", "2")
    assert code == 2
    code, _, err = run(capsys, "hyp-t", "0")
    assert code == 2


def test_admissible(capsys):
    code, out, _ = run(capsys, "admissible", "4,1;5,1;6,1")
    assert code == 0 and "admissible: yes" in out and "reduced: yes" in out
    code, out, _ = run(capsys, "admissible", "1,0;1,1;1,2")
    assert code == 1 and "admissible: no" in out
    code, out, _ = run(capsys, "admissible", "4,2;5,1;6,1")
    assert code == 1 and "reduced: no" in out
    code, _, err = run(capsys, "admissible", "junk")
    assert code == 2
    code, out, _ = run(capsys, "admissible", "6,1;8,1;9,1", "--json")
    doc = json.loads(out)
    assert doc["admissible"] and doc["reduced"] and doc["failing_prime"] is None


def test_e2_gaps(capsys):
    code, out, _ = run(capsys, "e2-gaps", "--limit", "40", "--max-gap", "2")
    assert code == 0
    assert out.splitlines() == ["14 15", "21 22", "33 34", "34 35", "38 39"]
    code, out, _ = run(capsys, "e2-gaps", "--limit", "40", "--max-gap", "2", "--json")
    assert json.loads(out)["pairs"][0] == [14, 15]


def test_env_variables_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("PF_BOUND", "20")
    code, _, _ = run(capsys, "witness", "T2", "-A", "3")
    assert code == 4  # env bound leaves no room for the first hit at 24
    code, out, _ = run(capsys, "witness", "T2", "-A", "3", "--bound", "1000", "--limit", "1")
    assert code == 0 and jsonl(out)[0]["x"] == 434  # flag beats env
    monkeypatch.setenv("PF_BOUND", "not-a-number")
    code, _, err = run(capsys, "witness", "T2", "-A", "3")
    assert code == 2 and "PF_BOUND" in err
