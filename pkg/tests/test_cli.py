from __future__ import annotations

import subprocess
import sys

import pytest

from cli_cases import CASES, INPUTS, expected, run_case
from gda.cli import main


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    assert run_case(CASES[name]) == expected(name)


def test_every_exit_code_is_covered():
    codes = {int(expected(n).splitlines()[1].split()[1]) for n in CASES}
    assert codes == {0, 1, 2, 3}


def test_error_lines_are_prefixed():
    for name in CASES:
        err = expected(name).split("--- stderr\n", 1)[1]
        for line in err.splitlines():
            assert line.startswith("error:")


def test_out_flag(tmp_path, monkeypatch):
    monkeypatch.chdir(INPUTS)
    target = tmp_path / "s3.inv"
    assert main(["involution", "solve", "--group", "s3.grp", "--cocycle", "trivial", "--tau", "inversion", "--out", str(target)]) == 0
    assert target.read_text() == "involution v1\nroot 1\n0 1 2 4 3 5\n0 0 0 0 0 0\n"


def test_round_trip_through_files(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(["cocycle", "random", "--group", "dihedral:3", "--root", "4", "--seed", "1", "--out", "r.coc"]) == 0
    assert main(["cocycle", "check", "--group", "dihedral:3", "--cocycle", "r.coc"]) == 0
    assert main(["involution", "solve", "--group", "dihedral:3", "--cocycle", "r.coc", "--tau", "inversion", "--out", "r.inv"]) == 0
    assert main(["involution", "check", "--group", "dihedral:3", "--cocycle", "r.coc", "--involution", "r.inv"]) == 0
    out = capsys.readouterr().out
    assert "involutive,ok," in out


def test_limits_do_not_leak():
    from gda.config import LIMITS

    before = LIMITS.work_budget
    main(["--work-budget", "5", "codim", "one", "--group", "cyclic:2", "--m", "1"])
    assert LIMITS.work_budget == before


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["codim", "table", "--group", "cyclic:2"])
    assert exc.value.code == 2


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "gda", "group", "info", "--group", "dihedral:4"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "order,commutator_order,abelian\n8,2,false\n"
