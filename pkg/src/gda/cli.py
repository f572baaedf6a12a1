"""Command-line shell: ``gda <area> <action> [options]``.

Exit codes: 0 success / true, 1 I/O or format error, 2 precondition violation,
3 negative mathematical answer.  Errors print one line starting with ``error:``.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

from . import codim as codim_mod
from .cohomology import (
    Cocycle,
    MuMap,
    act,
    coboundary,
    cohomologous,
    default_max_lift,
    format_cocycle,
    group_hint,
    is_cocycle,
    load_cocycle,
    pauli_cocycle,
    random_cocycle,
)
from .config import LIMITS
from .errors import CompatibilityError, FormatError, GDAError, PreconditionError
from .groups import (
    GroupTable,
    as_automorphism,
    build_group,
    check_antiautomorphism,
    format_group,
    identity_map,
    inversion_map,
    load_group,
)
from .involution import (
    build_involution,
    format_involution,
    load_involution,
    solve_compatibility,
    verify_involution,
)
from .pi_engine import elementary_identities, format_poly, is_identity, load_polys, multilinear_dimension

OK, IO_ERROR, PRECONDITION, NEGATIVE = 0, 1, 2, 3


class Negative(Exception):
    """A well-formed question whose answer is 'no' (exit 3)."""


# ---------------------------------------------------------------- argument resolution


def resolve_group(arg: str) -> GroupTable:
    if arg.startswith("table:"):
        return load_group(arg[len("table:"):])
    p = Path(arg)
    if p.is_file():
        return load_group(p)
    return build_group(arg)


def _pauli_q(arg: str) -> int | None:
    if arg.startswith("pauli:"):
        try:
            return int(arg.split(":", 1)[1])
        except ValueError:
            raise FormatError(f"bad pauli cocycle {arg!r}") from None
    return None


def infer_group(group_arg: str | None, *cocycle_args: str | None) -> GroupTable:
    """--group if given, else the group implied by a built-in or file cocycle."""
    if group_arg:
        return resolve_group(group_arg)
    for arg in cocycle_args:
        if not arg:
            continue
        q = _pauli_q(arg)
        if q is not None:
            return pauli_cocycle(q)[0]
        p = Path(arg)
        if p.is_file():
            hint = group_hint(p.read_text())
            if hint:
                return resolve_group(hint)
    raise PreconditionError("--group is required (no cocycle names its group)")


def resolve_cocycle(arg: str, G: GroupTable, validate: bool = True) -> Cocycle:
    if arg == "trivial":
        return Cocycle.trivial(G)
    q = _pauli_q(arg)
    if q is not None:
        H, sigma = pauli_cocycle(q)
        if H != G:
            raise PreconditionError(f"pauli:{q} lives on Z_{q} x Z_{q}, not on the given group")
        return sigma
    p = Path(arg)
    if not p.is_file():
        raise FormatError(f"no such cocycle file or built-in: {arg!r}")
    if validate:
        return load_cocycle(p, G)
    return _load_unchecked_cocycle(p, G)


def _load_unchecked_cocycle(path: Path, G: GroupTable) -> Cocycle:
    lines = [ln.split() for ln in path.read_text().splitlines() if ln.strip() and not ln.strip().startswith("#")]
    try:
        if lines[0] != ["cocycle", "v1"] or lines[1][0] != "order" or lines[1][2] != "root":
            raise FormatError("expected 'cocycle v1' and 'order <k> root <n>'")
        n = int(lines[1][3])
        rows = [[int(x) for x in ln] for ln in lines[2:]]
    except (IndexError, ValueError):
        raise FormatError(f"malformed cocycle file {path}") from None
    return Cocycle(G, n, rows)


def resolve_map(arg: str, G: GroupTable):
    if arg == "identity":
        return identity_map(G)
    if arg == "inversion":
        return inversion_map(G)
    p = Path(arg)
    text = p.read_text() if p.is_file() else arg
    try:
        image = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise FormatError(f"bad map {arg!r}: expected identity, inversion, a file or a comma list") from None
    return check_antiautomorphism(G, image)


def parse_ints(arg: str) -> list[int]:
    p = Path(arg)
    text = p.read_text() if p.is_file() else arg
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise FormatError(f"expected a list of integers, got {arg!r}") from None


def resolve_involution(args, G: GroupTable, sigma: Cocycle):
    if getattr(args, "involution", None):
        return load_involution(args.involution, sigma)
    tau = resolve_map(args.tau, G)
    mu = solve_compatibility(sigma, tau, args.max_lift)
    if mu is None:
        raise Negative(f"incompatible at max_lift {args.max_lift or default_max_lift(G)}")
    return build_involution(sigma, tau, mu)


def emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise FormatError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- group


def cmd_group_make(args):
    G = build_group(args.spec)
    emit(args, format_group(G))


def cmd_group_check(args):
    G = resolve_group(args.table)
    emit(args, f"ok,order {G.order}\n")


def cmd_group_info(args):
    G = resolve_group(args.group)
    emit(args, "order,commutator_order,abelian\n" f"{G.order},{len(G.commutator_subgroup)},{str(G.is_abelian).lower()}\n")


# ---------------------------------------------------------------- cocycle


def cmd_cocycle_check(args):
    G = infer_group(args.group, args.cocycle)
    sigma = resolve_cocycle(args.cocycle, G, validate=False)
    res = is_cocycle(sigma)
    if res:
        emit(args, "is_cocycle,true\n")
        return
    emit(args, "is_cocycle,false,%d %d %d\n" % res.witness)
    raise Negative()


def cmd_cocycle_coboundary(args):
    G = resolve_group(args.group)
    mu = MuMap(G, args.root, parse_ints(args.mu))
    emit(args, format_cocycle(coboundary(mu)))


def cmd_cocycle_cohomologous(args):
    G = infer_group(args.group, args.a, args.b)
    a, b = resolve_cocycle(args.a, G), resolve_cocycle(args.b, G)
    lift = args.max_lift or default_max_lift(G)
    mu = cohomologous(a, b, lift)
    if mu is None:
        emit(args, f"not cohomologous up to lift {lift}\n")
        raise Negative()
    emit(args, f"cohomologous,root {mu.n}\nmu {' '.join(str(int(x)) for x in mu.exps)}\n")


def cmd_cocycle_act(args):
    G = infer_group(args.group, args.cocycle)
    theta = resolve_map(args.map, G)
    if args.as_automorphism:
        theta = as_automorphism(theta)
    emit(args, format_cocycle(act(theta, resolve_cocycle(args.cocycle, G))))


def cmd_cocycle_pauli(args):
    _, sigma = pauli_cocycle(args.q)
    emit(args, format_cocycle(sigma, group_spec=f"product:cyclic:{args.q},cyclic:{args.q}"))


def cmd_cocycle_random(args):
    G = resolve_group(args.group)
    rng = np.random.default_rng(args.seed)
    emit(args, format_cocycle(random_cocycle(G, args.root, rng)))


# ---------------------------------------------------------------- involution


def cmd_involution_solve(args):
    G = infer_group(args.group, args.cocycle)
    sigma = resolve_cocycle(args.cocycle, G)
    tau = resolve_map(args.tau, G)
    lift = args.max_lift or default_max_lift(G)
    mu = solve_compatibility(sigma, tau, lift)
    if mu is None:
        emit(args, f"incompatible at max_lift {lift}\n")
        raise Negative()
    emit(args, format_involution(build_involution(sigma, tau, mu)))


def cmd_involution_check(args):
    G = infer_group(args.group, args.cocycle)
    sigma = resolve_cocycle(args.cocycle, G)
    try:
        iota = load_involution(args.involution, sigma)
    except CompatibilityError as exc:
        emit(args, f"incompatible,{exc}\n")
        raise Negative() from None
    report = verify_involution(iota)
    emit(args, "\n".join(report.lines()) + "\n")
    if not report:
        raise Negative()


# ---------------------------------------------------------------- pi


def _pi_setup(args):
    G = infer_group(args.group, args.cocycle)
    sigma = resolve_cocycle(args.cocycle, G)
    return G, resolve_involution(args, G, sigma)


def _degrees(args, G):
    U = parse_ints(args.degrees)
    if any(not 0 <= u < G.order for u in U):
        raise PreconditionError(f"degrees must lie in 0..{G.order - 1}")
    return tuple(U)


def cmd_pi_elementary(args):
    G, iota = _pi_setup(args)
    polys = elementary_identities(_degrees(args, G), iota)
    emit(args, "".join(format_poly(f, iota.n) for f in polys))


def cmd_pi_check(args):
    G, iota = _pi_setup(args)
    lines = ["poly,result"]
    all_ok = True
    for i, (f, _) in enumerate(load_polys(args.poly)):
        ok = is_identity(f, iota)
        all_ok &= ok
        lines.append(f"{i},{'identity' if ok else 'not-identity'}")
    emit(args, "\n".join(lines) + "\n")
    if not all_ok:
        raise Negative()


def cmd_pi_dim(args):
    G, iota = _pi_setup(args)
    emit(args, f"{multilinear_dimension(_degrees(args, G), iota, not args.no_involution)}\n")


# ---------------------------------------------------------------- codim


def _codim_records(args, G, m_lo, m_hi):
    tau = resolve_map(args.tau, G) if args.tau else None
    records = codim_mod.codim_table(G, tau, m_hi, strict=False)[m_lo - 1 :]
    if tau is not None and not args.no_validate:
        sigma = resolve_cocycle(args.cocycle, G) if args.cocycle else Cocycle.trivial(G)
        mu = solve_compatibility(sigma, tau, args.max_lift)
        if mu is None:
            raise Negative(f"incompatible at max_lift {args.max_lift or default_max_lift(G)}")
        codim_mod.validate_records(records, build_involution(sigma, tau, mu), max_m=args.validate_max_m)
    return records


def _render(args, records):
    text = codim_mod.records_to_csv(records)
    if args.pretty:
        rows = [ln.split(",") for ln in text.splitlines()]
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        text = "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows) + "\n"
    emit(args, text)
    if any(r.violations for r in records):
        raise Negative()


def cmd_codim_table(args):
    G = resolve_group(args.group)
    _render(args, _codim_records(args, G, 1, args.max_m))


def cmd_codim_one(args):
    G = resolve_group(args.group)
    _render(args, _codim_records(args, G, args.m, args.m))


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gda", description="Twisted group algebras, homogeneous involutions and codimensions.")
    ap.add_argument("--work-budget", type=int, help="cap on DP states per codimension computation")
    ap.add_argument("--oracle-cap", type=int, help="max m for the rank oracle")
    ap.add_argument("--fast-path", action="store_true", help="rank over two prime fields first")
    areas = ap.add_subparsers(dest="area", required=True)

    def sub(area, name, fn, help_):
        p = area.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    g = areas.add_parser("group", help="construct and inspect groups").add_subparsers(dest="action", required=True)
    p = sub(g, "make", cmd_group_make, "print the table of a constructor")
    p.add_argument("spec")
    p = sub(g, "check", cmd_group_check, "validate a table file")
    p.add_argument("table")
    p = sub(g, "info", cmd_group_info, "order, commutator subgroup size, abelian flag")
    p.add_argument("--group", required=True)

    c = areas.add_parser("cocycle", help="2-cocycles").add_subparsers(dest="action", required=True)
    p = sub(c, "check", cmd_cocycle_check, "test the cocycle identity")
    p.add_argument("--group")
    p.add_argument("--cocycle", required=True)
    p = sub(c, "coboundary", cmd_cocycle_coboundary, "print delta(mu)")
    p.add_argument("--group", required=True)
    p.add_argument("--mu", required=True, help="exponents, comma separated or a file")
    p.add_argument("--root", type=int, required=True)
    p = sub(c, "cohomologous", cmd_cocycle_cohomologous, "find mu with delta(mu) b = a")
    p.add_argument("--group")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--max-lift", type=int)
    p = sub(c, "act", cmd_cocycle_act, "apply an (anti)automorphism")
    p.add_argument("--group")
    p.add_argument("--map", required=True)
    p.add_argument("--cocycle", required=True)
    p.add_argument("--as-automorphism", action="store_true", help="use the automorphism formula for a map that is both")
    p = sub(c, "pauli", cmd_cocycle_pauli, "the cocycle a2*b1 on Z_q x Z_q")
    p.add_argument("q", type=int)
    p = sub(c, "random", cmd_cocycle_random, "a random cocycle with values in the n-th roots of unity")
    p.add_argument("--group", required=True)
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    i = areas.add_parser("involution", help="homogeneous involutions").add_subparsers(dest="action", required=True)
    p = sub(i, "solve", cmd_involution_solve, "decide compatibility and print an involution")
    p.add_argument("--group")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--max-lift", type=int)
    p = sub(i, "check", cmd_involution_check, "verify an involution file")
    p.add_argument("--group")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--involution", required=True)

    pi = areas.add_parser("pi", help="polynomial identities").add_subparsers(dest="action", required=True)
    for name, fn, help_ in (
        ("elementary", cmd_pi_elementary, "elementary identities for a degree sequence"),
        ("check", cmd_pi_check, "test polynomials for being identities"),
        ("dim", cmd_pi_dim, "dimension of a multilinear space modulo identities"),
    ):
        p = sub(pi, name, fn, help_)
        p.add_argument("--group")
        p.add_argument("--cocycle", default="trivial")
        p.add_argument("--tau", default="inversion")
        p.add_argument("--involution", help="involution file (otherwise solved from --cocycle/--tau)")
        p.add_argument("--max-lift", type=int)
        if name == "check":
            p.add_argument("--poly", required=True)
        else:
            p.add_argument("--degrees", required=True, help="comma separated element indices")
        if name == "dim":
            p.add_argument("--no-involution", action="store_true")

    cd = areas.add_parser("codim", help="codimension sequences").add_subparsers(dest="action", required=True)
    for name, fn in (("table", cmd_codim_table), ("one", cmd_codim_one)):
        p = sub(cd, name, fn, f"codimensions ({name})")
        p.add_argument("--group", required=True)
        p.add_argument("--tau")
        p.add_argument("--cocycle", help="cocycle for the validation involution (default trivial)")
        p.add_argument("--max-lift", type=int)
        p.add_argument("--pretty", action="store_true")
        p.add_argument("--no-validate", action="store_true", help="skip the rank-oracle check")
        p.add_argument("--validate-max-m", type=int, default=3)
        if name == "table":
            p.add_argument("--max-m", type=int, required=True)
        else:
            p.add_argument("--m", type=int, required=True)
    return ap


def main(argv=None) -> int:
    saved = dataclasses.replace(LIMITS)
    try:
        return _run(argv)
    finally:
        for f in dataclasses.fields(LIMITS):
            setattr(LIMITS, f.name, getattr(saved, f.name))


def _run(argv) -> int:
    args = build_parser().parse_args(argv)
    for name in ("work_budget", "oracle_cap"):
        val = getattr(args, name)
        if val is not None and val < 1:
            print(f"error: precondition: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return PRECONDITION
    if args.work_budget is not None:
        LIMITS.work_budget = args.work_budget
    if args.oracle_cap is not None:
        LIMITS.oracle_cap = args.oracle_cap
    if args.fast_path:
        LIMITS.fast_path = True
    try:
        for name in ("max_lift", "max_m", "m", "root", "q", "validate_max_m"):
            val = getattr(args, name, None)
            if val is not None and val < 1:
                raise PreconditionError(f"--{name.replace('_', '-')} must be positive")
        args.fn(args)
    except Negative as exc:
        if str(exc):
            sys.stdout.write(f"{exc}\n")
        return NEGATIVE
    except FormatError as exc:
        print(f"error: format: {exc}", file=sys.stderr)
        return IO_ERROR
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return IO_ERROR
    except PreconditionError as exc:
        print(f"error: precondition: {exc}", file=sys.stderr)
        return PRECONDITION
    except GDAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PRECONDITION
    return OK


if __name__ == "__main__":
    sys.exit(main())
