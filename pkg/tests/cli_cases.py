"""CLI golden cases shared by the CLI tests and the acceptance suite.

Each case runs ``gda`` in-process from ``golden/inputs`` and is compared with
``golden/expected/<name>.txt`` (exit code, stdout, stderr).  Regenerate after a
deliberate output change with ``python3 tests/cli_cases.py --regen``.
"""
from __future__ import annotations

import contextlib
import io
import os
import sys
from pathlib import Path

from gda.cli import main

HERE = Path(__file__).parent / "golden"
INPUTS = HERE / "inputs"
EXPECTED = HERE / "expected"

CASES = {
    "group_make_s3": "group make symmetric:3",
    "group_make_nested": "group make product:(product:cyclic:2,cyclic:2),cyclic:2",
    "group_check_q8": "group check q8.grp",
    "group_check_bad": "group check bad.grp",
    "group_info_s3": "group info --group s3.grp",
    "group_info_q8": "group info --group table:q8.grp",
    "group_make_unknown": "group make tetrahedral:4",
    "cocycle_pauli2": "cocycle pauli 2",
    "cocycle_check_pauli": "cocycle check --cocycle pauli2.coc",
    "cocycle_check_broken": "cocycle check --group cyclic:3 --cocycle broken.coc",
    "cocycle_check_missing": "cocycle check --group s3.grp --cocycle nofile.coc",
    "cocycle_check_no_group": "cocycle check --cocycle trivial",
    "cocycle_coboundary": "cocycle coboundary --group cyclic:2 --mu 0,1 --root 4",
    "cocycle_cohomologous_no": "cocycle cohomologous --a pauli2.coc --b trivial",
    "cocycle_cohomologous_lift": "cocycle cohomologous --a minus1.coc --b trivial",
    "cocycle_act_identity": "cocycle act --map identity --cocycle pauli:2",
    "cocycle_act_auto": "cocycle act --map identity --cocycle pauli:2 --as-automorphism",
    "cocycle_random_s3": "cocycle random --group symmetric:3 --root 6 --seed 7",
    "involution_solve_s3": "involution solve --group s3.grp --cocycle trivial --tau inversion",
    "involution_solve_q8": "involution solve --group q8.grp --cocycle trivial --tau inversion",
    "involution_solve_pauli": "involution solve --cocycle pauli:2 --tau identity",
    "involution_solve_incompatible": "involution solve --cocycle pauli:3 --tau identity",
    "involution_solve_tau_shape": "involution solve --group s3.grp --cocycle trivial --tau identity",
    "involution_solve_wrong_group": "involution solve --group s3.grp --cocycle pauli:2 --tau inversion",
    "involution_check_transpose": "involution check --cocycle pauli:2 --involution transpose.inv",
    "involution_check_bad": "involution check --cocycle pauli:2 --involution bad.inv",
    "pi_elementary_pauli": "pi elementary --cocycle pauli:2 --tau identity --degrees 2,1",
    "pi_elementary_s3": "pi elementary --group s3.grp --degrees 1,3",
    "pi_check_mixed": "pi check --cocycle pauli:2 --tau identity --involution transpose.inv --poly anticomm.mlp",
    "pi_check_identity": "pi check --cocycle pauli:2 --tau identity --poly anticomm_only.mlp",
    "pi_dim_s3": "pi dim --group s3.grp --degrees 1,3,4",
    "pi_dim_s3_graded": "pi dim --group s3.grp --degrees 1,3,4 --no-involution",
    "pi_dim_bad_degree": "pi dim --group s3.grp --degrees 1,9",
    "codim_table_s3": "codim table --group s3.grp --tau inversion --max-m 4",
    "codim_table_s3_pretty": "codim table --group s3.grp --tau inversion --max-m 3 --pretty",
    "codim_table_pauli": "codim table --group elab:2^2 --tau identity --cocycle pauli:2 --max-m 3",
    "codim_table_graded": "codim table --group dihedral:4 --max-m 5",
    "codim_one_klein": "codim one --group elab:2^2 --tau identity --m 8 --no-validate",
    "codim_budget": "--work-budget 10 codim one --group s3.grp --m 3",
    "codim_bad_m": "codim one --group s3.grp --m 0",
}


def run_case(argv: str) -> str:
    """Run one command line and render exit code and both streams as text."""
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(INPUTS)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = main(argv.split())
            except SystemExit as exc:  # argparse usage errors
                code = exc.code
    finally:
        os.chdir(cwd)
    return f"$ gda {argv}\nexit {code}\n--- stdout\n{out.getvalue()}--- stderr\n{err.getvalue()}"


def expected(name: str) -> str:
    return (EXPECTED / f"{name}.txt").read_text()


def regen() -> None:
    EXPECTED.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        (EXPECTED / f"{name}.txt").write_text(run_case(argv))


if __name__ == "__main__":
    if sys.argv[1:] == ["--regen"]:
        regen()
    else:
        for name, argv in CASES.items():
            print(run_case(argv))
