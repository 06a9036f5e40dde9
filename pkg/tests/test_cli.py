import json
import subprocess
import sys
from fractions import Fraction

import pytest

from menon.cli import main
from menon.records import RunRecord


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize("argv, expected", [
    (["r-sum", "--moduli", "12", "--polys", "x-1", "--funcs", "id"], "6"),
    (["s-sum", "--moduli", "4,6", "--polys", "x,x", "--funcs", "id,id"], "35/6"),
    (["s-sum", "--moduli", "4,6", "--M", "24"], "35/6"),
    (["cyclic-count", "--orders", "4,2", "--method", "all"], "6,6,6 agree=true"),
    (["cyclic-count", "--orders", "6"], "4"),
    (["identity", "menon_classic", "n=12"], "menon_classic: lhs=24 rhs=24 match=true"),
    (["identity", "richards", "n=8", "g=x^2-1"], "richards: lhs=32 rhs=32 match=true"),
    (["identity", "general_menon", "moduli=4,6", "a=1,-1"],
     "general_menon: lhs=12 rhs=12 match=true"),
])
def test_golden_transcripts(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_check_flag(capsys):
    code, out, _ = run(capsys, "r-sum", "--moduli", "6,10", "--polys", "x^2+1,x-3", "--check")
    assert code == 0
    assert out.splitlines()[-1] == "agree=true"


def test_identity_mismatch_exits_one(capsys):
    code, out, _ = run(capsys, "identity", "power_j", "n=9", "j=3")
    assert code == 1
    assert out == "power_j: lhs=30 rhs=18 match=false"


@pytest.mark.parametrize("argv, code", [
    (["s-sum", "--moduli", "4", "--polys", "x^"], 2),
    (["s-sum", "--moduli", "4,x"], 2),
    (["s-sum", "--moduli", "4,6", "--M", "18"], 2),
    (["s-sum", "--moduli", "4", "--funcs", "bogus"], 2),
    (["s-sum", "--moduli", "4,6,8", "--polys", "x,x"], 2),
    (["identity", "menon_classic", "n=abc"], 2),
    (["identity", "menon_classic", "n"], 2),
    (["identity", "power_j", "n=4", "j=2"], 2),
    (["cyclic-count", "--orders", "0,2"], 2),
    (["cyclic-count", "--orders", "1000,1000", "--method", "enumerate"], 3),
])
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    assert err.startswith("error: ")


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("MENON_BUDGET", "10")
    code, _, err = run(capsys, "s-sum", "--moduli", "1000", "--check")
    assert code == 3
    assert "budget" in err


def test_overflow_exit_code(capsys):
    code, _, err = run(capsys, "s-sum", "--moduli", "2", "--funcs", "id^100")
    assert code == 0
    code, _, err = run(capsys, "s-sum", "--moduli", "1024", "--funcs", "id^20")
    assert code == 3 and "128-bit" in err


def test_json_record_round_trips(capsys):
    code, out, _ = run(capsys, "--json", "s-sum", "--moduli", "4,6", "--check")
    assert code == 0
    rec = RunRecord.from_json(out)
    assert rec.command == "s-sum"
    assert rec.outputs["value"] == rec.outputs["direct"] == Fraction(35, 6)
    assert rec.inputs == {"moduli": [4, 6], "polys": ["x", "x"], "funcs": ["id", "id"], "M": 12}
    assert set(rec.timing_ns) == {"formula", "direct"}
    assert RunRecord.from_json(rec.to_json()) == rec
    assert json.loads(out)["outputs"]["value"] == {"num": 35, "den": 6}


def test_table_funcspec_file(capsys, tmp_path):
    table = tmp_path / "f.txt"
    table.write_text("\n".join(f"{n} {n}/{n + 1}" for n in range(1, 13)) + "\n")
    code, out, _ = run(capsys, "r-sum", "--moduli", "12", "--polys", "x-1",
                       "--funcs", f"table:{table}", "--check")
    assert code == 0
    assert out.splitlines()[-1] == "agree=true"
    code, _, err = run(capsys, "r-sum", "--moduli", "24", "--funcs", f"table:{table}")
    assert code == 2 and "bound" in err


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--limit", "40")
    assert code == 0
    assert out.splitlines()[-1] == "passed"
    assert all(line.startswith("PASS ") for line in out.splitlines()[:-1])


def test_verify_json_tallies(capsys):
    code, out, _ = run(capsys, "--json", "verify", "--suite", "groups", "--limit", "60")
    rec = RunRecord.from_json(out)
    assert code == 0 and rec.outputs["passed"] is True
    assert all(t["failed"] == 0 and t["checked"] > 0 for t in rec.tallies.values())


def test_bench_reports_both_timings(capsys):
    code, out, _ = run(capsys, "--json", "bench", "r-sum", "--moduli", "1", "--repeat", "1")
    rec = RunRecord.from_json(out)
    assert code == 0
    assert rec.outputs["formula"] == rec.outputs["direct"] == 1
    assert set(rec.timing_ns) == {"formula", "direct"}


def test_bench_cyclic(capsys):
    code, out, _ = run(capsys, "bench", "cyclic-count", "--orders", "288,24", "--repeat", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("enumerate: value=") and lines[1].startswith("formula: value=")
    assert lines[-1].startswith("agree=true")


def test_bench_requires_instance(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bench", "r-sum"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "menon", "cyclic-count", "--orders", "2,2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "4"
