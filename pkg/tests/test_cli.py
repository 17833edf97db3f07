from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from modpi.cli import run
from modpi.paths import data_dir


def lines(capsys):
    return capsys.readouterr().out.strip().splitlines()


def test_verify_span(capsys):
    assert run(["verify", "span", "--order", "400"]) == 0
    out = lines(capsys)
    assert out == ["CHECK span_p163 PASS coefficients agree through q^400"]


def test_verify_modeq_seven_lines(capsys):
    assert run(["verify", "modeq", "--all", "--order", "120"]) == 0
    out = lines(capsys)
    assert len(out) == 7 and all(x.startswith("CHECK modeq_") and " PASS " in x for x in out)


def test_verify_modeq_single_table_with_solve(capsys):
    assert run(["verify", "modeq", "--table", "f-g4", "--solve"]) == 0
    assert [x.split()[1] for x in lines(capsys)] == ["modeq_f-g4", "solve_f-g4"]


def test_verify_arith(capsys):
    assert run(["verify", "arith"]) == 0
    out = lines(capsys)
    assert out[0] == "CHECK arith_p163 PASS T = 8, genus = 13, h(-163) = 1"


def test_verify_singular(capsys):
    assert run(["verify", "singular"]) == 0
    out = lines(capsys)
    assert out[0].startswith("CHECK g2_exact PASS G2 = -1448")
    assert all(" PASS " in x for x in out)


def test_identities_exit_code_reflects_domain_failure(capsys):
    assert run(["verify", "identities"]) == 1
    failing = [x for x in lines(capsys) if " FAIL " in x]
    assert failing == ["CHECK clausen_0.05 FAIL 1 - 4w = -2.9570 <= 0 at q = 0.05; "
                       "outside convergence domain"]


def test_pi_chudnovsky_check(capsys):
    assert run(["pi", "chudnovsky", "--digits", "1000", "--check"]) == 0
    out = lines(capsys)
    assert out[0] == "3."
    assert out[1] == "14159265358979323846264338327950288419716939937510"
    assert [len(x) for x in out[1:-1]] == [50] * 19 + [49]
    assert out[-1] == "CHECK pi_1000 PASS 1000 digits agree"


def test_pi_machin_digits_only(capsys):
    assert run(["pi", "machin", "--digits", "12"]) == 0
    assert lines(capsys) == ["3.", "14159265358"]


def test_pi_ramanujan_and_series(capsys):
    assert run(["pi", "ramanujan", "--digits", "100"]) == 0
    assert run(["pi", "series", "--n", "67", "--digits", "30"]) == 0
    out = lines(capsys)
    assert [x.split()[1] for x in out] == ["rampi1_100", "rampi2_100", "series_67_30"]


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["verify", "nothing"]) == 2
    assert run(["verify", "span", "--bogus"]) == 2
    assert run(["pi", "series", "--n", "23"]) == 2
    assert run(["pi", "ramanujan", "--digits", "500"]) == 2
    assert run(["pi", "chudnovsky", "--digits", "0"]) == 2
    assert run(["verify", "span", "--data", "/nonexistent/dir"]) == 2


def test_structured_report(capsys):
    assert run(["report", "arith", "--format", "structured"]) == 0
    records = [json.loads(x) for x in lines(capsys)]
    assert [r["name"] for r in records] == ["arith_p163", "theta_independence"]
    assert set(records[0]) == {"name", "status", "detail", "elapsed_ms"}


def test_deterministic_order_with_pool(capsys):
    run(["verify", "identities", "--jobs", "4"])
    a = [x.split()[1:3] for x in lines(capsys)]
    run(["verify", "identities"])
    b = [x.split()[1:3] for x in lines(capsys)]
    assert a == b


def test_env_data_override(tmp_path, monkeypatch, capsys):
    for name in ("gram_p163.txt", "modeq_p163.txt"):
        shutil.copy(data_dir() / name, tmp_path)
    path = tmp_path / "modeq_p163.txt"
    path.write_text(path.read_text().replace("modeq f-g5 lead +1", "modeq f-g5 lead -1"))
    monkeypatch.setenv("MODPI_DATA", str(tmp_path))
    assert run(["verify", "modeq"]) == 1
    out = lines(capsys)
    assert [x.split()[1] for x in out if " FAIL " in x] == ["modeq_f-g5"]


def test_console_module_entry():
    proc = subprocess.run([sys.executable, "-m", "modpi.cli", "pi", "machin", "--digits", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.split() == ["3.", "1415"]


@pytest.mark.slow
def test_verify_all_reflects_conjunction(capsys):
    code = run(["verify", "all"])
    out = lines(capsys)
    assert len(out) >= 60
    assert code == (0 if all(" PASS " in x for x in out) else 1)
