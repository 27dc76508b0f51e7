"""CLI behavior: formats, exit codes, determinism, round-trips."""

import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "etale_quadrics", *args],
        capture_output=True,
        text=True,
        timeout=300,
    )


def records_by_degree(payload):
    out = {}
    for r in payload["records"]:
        out.setdefault(r["degree"], []).append(r["order"])
    return out


def test_decompose_text():
    res = run_cli("decompose", "7")
    assert res.returncode == 0
    assert "M3 + M2*T1 + M2*T2 + M2*T3" in res.stdout


def test_decompose_rejects_zero():
    res = run_cli("decompose", "0")
    assert res.returncode == 2
    assert "dimension" in res.stderr


def test_decompose_json():
    res = run_cli("decompose", "6", "--format", "json")
    payload = json.loads(res.stdout)
    assert payload["terms"] == [{"n": 2, "j": j} for j in range(4)]
    assert payload["expansion"] == [2]
    assert payload["residual"] == 0


def test_cohomology_rost_mod4():
    res = run_cli("cohomology", "--rost", "2", "--coeff", "mod2s:2", "--format", "json")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert records_by_degree(payload) == {0: [4], 2: [2], 4: [2], 6: [4]}


def test_cohomology_rost_2adic():
    res = run_cli("cohomology", "--rost", "3", "--coeff", "2adic", "--format", "json")
    payload = json.loads(res.stdout)
    free = sorted(r["degree"] for r in payload["records"] if r["order"] == 0)
    torsion = sorted(r["degree"] for r in payload["records"] if r["order"] == 2)
    assert free == [0, 14]
    assert torsion == [4, 8, 12]


def test_cohomology_quadric_2adic_table():
    res = run_cli("cohomology", "7", "--coeff", "2adic", "--format", "json")
    payload = json.loads(res.stdout)
    by_degree = records_by_degree(payload)
    assert by_degree[8] == [2, 0, 2]  # sorted by Rost index desc, twist asc
    assert sorted(by_degree) == [0, 2, 4, 6, 8, 10, 12, 14]
    degree4 = [r for r in payload["records"] if r["degree"] == 4]
    assert [r["algebraic"] for r in degree4] == [False, True]


def test_cohomology_mod2():
    res = run_cli("cohomology", "--rost", "2", "--coeff", "mod2", "--format", "json")
    payload = json.loads(res.stdout)
    assert [r["degree"] for r in payload["records"]] == list(range(7))
    assert all(r["order"] == 2 for r in payload["records"])
    algebraic = [r["degree"] for r in payload["records"] if r["algebraic"]]
    assert algebraic == [0, 4, 6]


def test_cohomology_requires_one_target():
    assert run_cli("cohomology", "7", "--rost", "2").returncode == 2
    assert run_cli("cohomology").returncode == 2
    assert run_cli("cohomology", "7", "--coeff", "mod3").returncode == 2


def test_record_sort_order():
    res = run_cli("cohomology", "7", "--coeff", "2adic", "--format", "json")
    payload = json.loads(res.stdout)
    keys = [
        (r["degree"], -r["source"]["n"], r["source"]["j"], r["generator"])
        for r in payload["records"]
    ]
    assert keys == sorted(keys)


def test_json_round_trip():
    res = run_cli("cohomology", "--rost", "2", "--coeff", "2adic", "--format", "json")
    payload = json.loads(res.stdout)
    assert json.dumps(payload, indent=2) + "\n" == res.stdout


def test_csv_output():
    res = run_cli("cohomology", "--rost", "2", "--coeff", "2adic", "--format", "csv")
    lines = res.stdout.splitlines()
    assert lines[0] == "degree,twist,order,generator,n,j,algebraic"
    assert "4,0,2,rho_bar_4,2,0,true" in lines


def test_nonalgebraic_fixtures():
    res = run_cli("nonalgebraic", "7", "--format", "json")
    payload = json.loads(res.stdout)
    assert payload["has_nonalgebraic"] is True
    assert payload["records"] == [{"degree": 4, "dim": 1, "mod4": 0}]
    res = run_cli("nonalgebraic", "5", "--format", "json")
    payload = json.loads(res.stdout)
    assert payload["has_nonalgebraic"] is False
    assert payload["records"] == []
    res = run_cli("nonalgebraic", "15", "--format", "json")
    payload = json.loads(res.stdout)
    mod4 = [r["degree"] for r in payload["records"] if r["mod4"] == 0]
    assert mod4 == [4, 8, 12, 16, 20]


def test_verify_scope_pass():
    res = run_cli("verify", "--scope", "s2")
    assert res.returncode == 0
    assert "PASS C1" in res.stdout


def test_verify_deterministic_and_parallel(tmp_path):
    args = ("verify", "--scope", "s7", "--dmax", "96")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    parallel = run_cli(*args, "--parallel")
    assert parallel.stdout == first.stdout


def test_out_writes_identical_bytes(tmp_path):
    target = tmp_path / "table.json"
    res = run_cli("cohomology", "--rost", "2", "--coeff", "2adic", "--format", "json")
    res2 = run_cli(
        "cohomology", "--rost", "2", "--coeff", "2adic", "--format", "json",
        "--out", str(target),
    )
    assert res2.returncode == 0 and res2.stdout == ""
    assert target.read_text() == res.stdout


def test_verify_json_format():
    res = run_cli("verify", "--scope", "s9", "--format", "json")
    payload = json.loads(res.stdout)
    assert payload["passed"] is True
    assert all(c["passed"] for c in payload["checks"])


def test_verify_rejects_unknown_scope():
    assert run_cli("verify", "--scope", "s99").returncode == 2


def test_verify_exit_code_on_mismatch(monkeypatch, capsys):
    from etale_quadrics import cli
    from etale_quadrics.verify import CheckResult

    fabricated = [CheckResult("X0", "s2", False, "fabricated mismatch", {"got": 1})]
    monkeypatch.setattr(cli, "run_checks", lambda scope, opts: fabricated)
    assert cli.main(["verify", "--scope", "s2"]) == 1
    out = capsys.readouterr().out
    assert "FAIL X0" in out and '"got": 1' in out
