import json
import subprocess
import sys

import pytest

from conering.cli import main
from conering.tables_io import read_table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mul(capsys):
    assert run(capsys, "mul", "--basis", "cd", "<CD>", "<CD>") == (0, "2*<CDCD> - <CDDC> + <DDD>\n", "")


def test_mul_infers_basis(capsys):
    code, out, _ = run(capsys, "mul", "{1:0}", "{1:0}")
    assert code == 0
    assert out.strip() == "{0:1} + {2:0}"


def test_mul_json(capsys):
    code, out, _ = run(capsys, "mul", "--json", "<C>", "<C>")
    assert json.loads(out)["terms"] == [["<CC>", 1], ["<D>", 1]]


def test_cone_in_each_basis(capsys):
    assert run(capsys, "cone", "<CD>")[1] == "<CCD>\n"
    assert run(capsys, "cone", "{0:1}")[1] == "{1:1} + {0:0,0:0}\n"
    assert run(capsys, "cone", "[0:0,0:0]")[1] == "[1:0,0:0]\n"


def test_join(capsys):
    assert run(capsys, "join", "<>", "<C>")[1] == "<CC>\n"


def test_convert(capsys):
    assert run(capsys, "convert", "--from", "rank", "--to", "cd", "{0:0,0:0}")[1] == "<CD> - <DC>\n"
    code, out, _ = run(capsys, "convert", "--from", "cd", "--to", "counting", "<CD>")
    assert code == 0 and out.strip() == "[1:1] + [0:0,0:0]"


def test_dims(capsys):
    assert run(capsys, "dims", "--max-degree", "5")[1] == "1 1 2 3 5 8\n"
    code, out, _ = run(capsys, "dims", "--json", "--max-degree", "3")
    assert json.loads(out)["dims"] == [1, 1, 2, 3]


def test_table(capsys, tmp_path):
    path = tmp_path / "rank.txt"
    code, out, _ = run(capsys, "table", "--basis", "rank", "--max-degree", "4", "--out", str(path))
    assert code == 0
    assert "sha256:" in out
    assert read_table(path).basis == "rank"


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rank-cone", "--max-degree", "6")
    assert code == 0
    assert "rank-cone" in out


def test_verify_failure_exits_one(capsys, monkeypatch):
    from conering import cli
    from conering.suites import CheckResult, SuiteReport

    def broken(name, d):
        report = SuiteReport(name, d)
        report.checks.append(CheckResult("forced", False, 1, {"case": "x", "lhs": "1", "rhs": "2"}))
        return report

    monkeypatch.setattr(cli, "run_suite", broken)
    assert run(capsys, "verify", "--suite", "simplices", "--max-degree", "2")[0] == 1


def test_scan(capsys, tmp_path):
    code, out, _ = run(capsys, "scan", "--max-degree", "8")
    assert code == 0
    assert "negatives=2" in out
    assert run(capsys, "scan", "--strict", "--max-degree", "8")[0] == 1
    assert run(capsys, "scan", "--strict", "--max-degree", "7")[0] == 0
    path = tmp_path / "scan.json"
    code, out, _ = run(capsys, "scan", "--json", "--max-degree", "8", "--out", str(path))
    assert code == 0
    assert len(json.loads(path.read_text())["negatives"]) == 2


def test_betti(capsys):
    assert run(capsys, "betti", "<CC> + <D>")[1] == "[0:1] 1\n[2:0] 1\n"
    assert run(capsys, "betti", "<C> + <CC>")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["mul", "<CD>"],
        ["mul", "<CX>", "<C>"],
        ["dims", "--max-degree", "-1"],
        ["dims", "--max-degree", "two"],
        ["verify", "--suite", "nope", "--max-degree", "2"],
        ["convert", "--from", "cd", "--to", "rank", "{0:0}"],
        ["mul", "<C>", "{0:0}"],
        ["cone", "0"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("conering: error:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "conering", "dims", "--max-degree", "4"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == "1 1 2 3 5\n"
