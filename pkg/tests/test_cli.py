import csv
import io
import json
import subprocess
import sys

import pytest

from potts_atlas.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_usage(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    return exc.value.code, capsys.readouterr().err


def test_allowed_q_csv(capsys):
    code, out, _ = run(capsys, "allowed-q", "--max-m", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["q"] for r in rows] == ["2", "3", "1"]


def test_allowed_q_one_row(capsys):
    code, out, _ = run(capsys, "allowed-q", "--max-m", "2")
    assert code == 0 and len(out.strip().splitlines()) == 2


def test_allowed_q_bad(capsys):
    code, err = run_usage(capsys, "allowed-q", "--max-m", "1")
    assert code == 2 and "max-m must be ≥ 2" in err


def test_allowed_p(capsys):
    _, out, _ = run(capsys, "allowed-p", "--n", "1", "--m", "3", "--format", "csv")
    assert [r["p"] for r in csv.DictReader(io.StringIO(out))] == ["1", "3/2", "2", "3"]
    _, out, _ = run(capsys, "allowed-p", "--n", "1", "--m", "3", "--all", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["p"] for r in rows] == ["0", "1", "3/2", "2", "3"]
    assert rows[0]["physical"] == "no"


def test_allowed_p_not_coprime(capsys):
    code, err = run_usage(capsys, "allowed-p", "--n", "2", "--m", "4")
    assert code == 2 and "n and m must be coprime" in err


def test_coeffs(capsys):
    _, out, _ = run(capsys, "coeffs", "--n", "1", "--m", "3", "--series", "S1", "--M", "2",
                    "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["K"]) for r in rows] == list(range(-1, 5))
    assert rows[-1]["kind"] == "rho" and rows[-1]["value"] == "0"
    _, out, _ = run(capsys, "coeffs", "--n", "2", "--m", "3", "--series", "C2", "--M", "2",
                    "--format", "json")
    doc = json.loads(out)
    assert [r["K"] for r in doc["rows"]] == [-1, 0, 1]


def test_coeffs_range(capsys):
    _, out, _ = run(capsys, "coeffs", "--n", "1", "--m", "4", "--series", "S2", "--M", "1",
                    "--range=-3..7", "--format", "csv")
    assert len(list(csv.DictReader(io.StringIO(out)))) == 11
    code, _ = run_usage(capsys, "coeffs", "--n", "1", "--m", "4", "--series", "S2", "--M", "1",
                        "--range", "2..7")
    assert code == 2


def test_coeffs_wrong_series(capsys):
    code, err = run_usage(capsys, "coeffs", "--n", "1", "--m", "3", "--series", "C2", "--M", "1")
    assert code == 2 and "C2 requires Case 2" in err
    code, _ = run_usage(capsys, "coeffs", "--n", "1", "--m", "3", "--series", "S1", "--M", "0")
    assert code == 2


@pytest.mark.parametrize("n,m,deg,rs,gamma", [
    (1, 3, "27", "5/6", "-1/5"), (2, 3, "5", "2/3", "-1/2"), (1, 2, "10", "3/4", "-1/3"),
])
def test_exponents(capsys, n, m, deg, rs, gamma):
    _, out, _ = run(capsys, "exponents", "--n", str(n), "--m", str(m), "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert (row["disc_degree"], row["r/s"], row["gamma_s"]) == (deg, rs, gamma)


def test_scan(capsys):
    _, out, err = run(capsys, "scan", "--max-m", "40", "--target", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["n"], r["m"]) for r in rows] == [("1", "3")]
    assert "pairs" in err and "hits" in err
    code, _ = run_usage(capsys, "scan", "--max-m", "0", "--target", "3")
    assert code == 2


def test_scan_env_jobs(capsys, monkeypatch):
    monkeypatch.setenv("POTTS_ATLAS_JOBS", "2")
    _, par, _ = run(capsys, "scan", "--max-m", "20", "--target", "2")
    monkeypatch.setenv("POTTS_ATLAS_JOBS", "1")
    _, seq, _ = run(capsys, "scan", "--max-m", "20", "--target", "2")
    assert par == seq
    monkeypatch.setenv("POTTS_ATLAS_JOBS", "many")
    code, _ = run_usage(capsys, "scan", "--max-m", "5", "--target", "2")
    assert code == 2


def test_duality_words(capsys):
    code, out, _ = run(capsys, "duality", "words", "--length", "8", "--verify")
    assert code == 0 and out.strip() == "PASS 6561 strings"
    _, out, _ = run(capsys, "duality", "words", "--length", "4", "--format", "csv")
    assert len(list(csv.DictReader(io.StringIO(out)))) == 8
    code, err = run_usage(capsys, "duality", "words", "--length", "20")
    assert code == 2 and "length cap is 12 for --verify" in err
    code, _ = run_usage(capsys, "duality", "words", "--length", "13", "--verify")
    assert code == 2


def test_duality_words_failure_exit_code(capsys, monkeypatch):
    from potts_atlas import duality

    monkeypatch.setattr(duality, "new_weight", lambda sigma: 0)
    code, out, _ = run(capsys, "duality", "words", "--length", "2", "--verify")
    assert code == 1 and out.startswith("FAIL")


def test_duality_beta(capsys):
    _, out, _ = run(capsys, "duality", "beta", "--model", "ising", "--beta", "0.4406868",
                    "--format", "json")
    row = json.loads(out)["rows"][0]
    assert abs(row["beta_dual"] - 0.4406868) < 1e-6
    assert row["residual"] < 1e-6
    code, _ = run_usage(capsys, "duality", "beta", "--model", "potts3", "--beta", "-1")
    assert code == 2


ALL_COMMANDS = [
    ["allowed-q", "--max-m", "6"],
    ["allowed-p", "--n", "3", "--m", "7", "--all"],
    ["coeffs", "--n", "2", "--m", "5", "--series", "C2", "--M", "3"],
    ["exponents", "--n", "4", "--m", "9"],
    ["scan", "--max-m", "15", "--target", "2"],
    ["duality", "words", "--length", "3"],
    ["duality", "words", "--length", "5", "--verify"],
    ["duality", "beta", "--model", "potts3", "--beta", "0.8"],
]


@pytest.mark.parametrize("argv", ALL_COMMANDS)
def test_json_round_trip_and_determinism(capsys, argv):
    _, first, _ = run(capsys, *argv, "--format", "json")
    _, second, _ = run(capsys, *argv, "--format", "json")
    assert first == second
    doc = json.loads(first)
    assert json.dumps(doc, indent=2, ensure_ascii=False) + "\n" == first
    assert all(line == line.rstrip() for line in first.splitlines())


@pytest.mark.parametrize("argv", ALL_COMMANDS)
def test_table_and_csv_are_stable(capsys, argv):
    for fmt in ("table", "csv"):
        _, a, _ = run(capsys, *argv, "--format", fmt)
        _, b, _ = run(capsys, *argv, "--format", fmt)
        assert a == b and a


def test_exact_values_round_trip_from_json(capsys):
    from potts_atlas.exactnum import CycloNumber
    from potts_atlas.sheets import ThetaParam

    _, out, _ = run(capsys, "allowed-q", "--max-m", "7", "--format", "json")
    for row in json.loads(out)["rows"]:
        q = CycloNumber.from_json(row["q"])
        assert q == ThetaParam(row["n"], row["m"]).q
        assert abs(row["q_approx"] - float(q.to_complex().real)) < 1e-11


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "potts_atlas", "exponents", "--n", "1", "--m", "3"],
        capture_output=True, text=True, check=True,
    )
    assert "5/6" in res.stdout


def test_missing_subcommand(capsys):
    code, _ = run_usage(capsys)
    assert code == 2
