"""Command-line interface: ``lieinv <command> ...``.

Exit codes: 0 success, 1 negative verification, 2 input error,
3 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .catalog import UnknownEntry, catalog_entries, catalog_lookup
from .core import jacobi_check
from .formats import ParseError, emit_algebra, emit_polynomial, parse_algebra_file, parse_polynomial, parse_rational
from .invariants import (
    DEFAULT_MAX_DEGREE,
    DEFAULT_RANGE,
    DEFAULT_TRIALS,
    PARANOID_RANGE,
    coadjoint_fields,
    full_report,
    radical_subsystem,
    rank_trials,
    subsystem_invariants,
)
from .polynomial import apply_field
from .semidirect import levi_pair_from_algebra, validate_levi

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


class Config:
    def __init__(self, args):
        self.seed = args.seed
        self.trials = args.trials * (2 if args.paranoid else 1)
        self.coord_range = PARANOID_RANGE if args.paranoid else DEFAULT_RANGE
        self.max_degree = args.max_degree
        self.output = args.output
        if self.trials < 1:
            raise InputError("--trials must be at least 1")
        if self.max_degree < 1:
            raise InputError("--max-degree must be at least 1")


def _params(args) -> dict[str, Fraction]:
    out = {}
    for item in args.param or []:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise InputError(f"--param expects name=rational, got {item!r}")
        try:
            out[name.strip()] = parse_rational(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"--param {name}: {exc}") from None
    return out


def _load(args):
    path = args.file
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_algebra_file(data, _params(args))


def _emit(obj, cfg_output: str, text_lines: list[str]):
    if cfg_output == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _levi_pair(af):
    if af.levi_dim is None:
        return None
    return levi_pair_from_algebra(af.algebra, af.levi_dim, af.rep, af.name)


def cmd_check(args) -> int:
    af = _load(args)
    alg = af.algebra
    failures = jacobi_check(alg)
    out = {"dim": alg.dim, "jacobi_ok": not failures, "name": af.name}
    lines = [f"{af.name or 'algebra'}: dimension {alg.dim}"]
    if failures:
        out["jacobi_failures"] = [{"triple": list(t), "residual": [str(x) for x in r]} for t, r in failures]
        lines.append(f"Jacobi identity fails on {len(failures)} triple(s)")
        lines += [f"  {t}: residual {[str(x) for x in r]}" for t, r in failures[:10]]
    else:
        lines.append("Jacobi identity: ok")
    clean = not failures
    if af.levi_dim is not None:
        try:
            report = validate_levi(_levi_pair(af))
        except ValueError as exc:
            out["levi"] = {"clean": False, "flags": [str(exc)]}
            lines.append(f"Levi data: {exc}")
            clean = False
        else:
            out["levi"] = report.to_dict()
            clean = clean and report.clean
            lines.append("Levi data: clean" if report.clean else "Levi data flagged:")
            lines += [f"  {f}" for f in report.flags]
            lines += [f"  note: {n}" for n in report.notes]
    out["clean"] = clean
    _emit(out, args.output, lines)
    return EXIT_OK if clean else EXIT_INPUT


def cmd_count(args) -> int:
    cfg = Config(args)
    af = _load(args)
    alg = af.algebra
    ranks = rank_trials(alg, cfg.trials, cfg.seed, cfg.coord_range)
    grank = max(ranks)
    if grank % 2:
        raise AssertionError("odd rank of a skew-symmetric matrix")
    N = alg.dim - grank
    out = {
        "N": N,
        "complete": None,
        "degree_bound_used": None,
        "dim": alg.dim,
        "generic_rank": grank,
        "independent_count": None,
        "polynomial_invariants": None,
        "rank_trials": ranks,
        "seed": cfg.seed,
        "trials": cfg.trials,
    }
    lines = [f"N = {N}", f"generic rank = {grank} (dim {alg.dim})", f"rank per trial: {' '.join(map(str, ranks))}"]
    _emit(out, cfg.output, lines)
    return EXIT_OK


def cmd_invariants(args) -> int:
    cfg = Config(args)
    af = _load(args)
    alg = af.algebra
    out, lines = {}, []
    if args.radical_only:
        pair = _levi_pair(af)
        if pair is None:
            raise InputError("--radical-only needs Levi metadata (a 'levi' field) in the algebra file")
        try:
            _, count = radical_subsystem(pair, cfg.trials, cfg.seed, cfg.coord_range)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        sols = subsystem_invariants(pair, cfg.max_degree)
        out["radical_subsystem"] = {
            "solution_count": count,
            "solutions": [emit_polynomial(p, alg.basis) for p in sols],
        }
        lines.append(f"radical subsystem: {count} independent solution(s)")
        lines += [f"  {emit_polynomial(p, alg.basis)}" for p in sols]
    rep = full_report(alg, cfg.max_degree, cfg.trials, cfg.seed, cfg.coord_range)
    out.update({
        "N": rep.N,
        "complete": rep.complete,
        "degree_bound_used": rep.degree_bound_used,
        "dim": alg.dim,
        "generic_rank": rep.generic_rank,
        "independent_count": rep.independent_count,
        "notes": rep.notes,
        "polynomial_invariants": [emit_polynomial(p, alg.basis) for p in rep.polynomial_invariants],
        "rank_trials": rep.rank_trials,
        "seed": cfg.seed,
        "trials": cfg.trials,
    })
    lines.append(f"N = {rep.N}")
    lines.append(f"polynomial invariants up to degree {rep.degree_bound_used}:")
    lines += [f"  {emit_polynomial(p, alg.basis)}" for p in rep.polynomial_invariants] or ["  (none)"]
    lines.append(f"functionally independent: {rep.independent_count} of {rep.N}" + (" (complete)" if rep.complete else ""))
    lines += [f"note: {n}" for n in rep.notes]
    _emit(out, cfg.output, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    af = _load(args)
    alg = af.algebra
    P = parse_polynomial(args.poly, alg.basis)
    failing = []
    for i, f in enumerate(coadjoint_fields(alg)):
        img = apply_field(f, P)
        if not img.is_zero():
            failing.append((alg.basis[i], emit_polynomial(img, alg.basis)))
    ok = not failing
    out = {
        "invariant": ok,
        "polynomial": emit_polynomial(P, alg.basis),
        "failures": [{"generator": g, "image": img} for g, img in failing],
    }
    lines = [f"{emit_polynomial(P, alg.basis)}: " + ("invariant" if ok else "not invariant")]
    lines += [f"  field of {g} gives {img}" for g, img in failing]
    _emit(out, args.output, lines)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = catalog_entries()
        out = [{"name": e.name, "expected_N": e.expected_N, "description": e.description} for e in entries]
        lines = [f"{e.name:<16} N={e.expected_N!s:<8} {e.description}" for e in entries]
        _emit(out, args.output, lines)
        return EXIT_OK
    if not args.name:
        raise InputError("catalog show needs an entry name")
    entry = catalog_lookup(args.name)
    params = _params(args)
    try:
        alg = entry.build(params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.emit:
        levi = entry.levi_dim
        sys.stdout.write(emit_algebra(alg, levi, entry.rep_label() if levi else None).decode("utf-8") + "\n")
        return EXIT_OK
    out = {
        "name": entry.name,
        "description": entry.description,
        "dim": alg.dim,
        "basis": list(alg.basis),
        "expected_N": entry.expected_N,
        "known_invariants": list(entry.known_invariants),
        "params": {k: str(v) for k, v in entry.bind(params).items()},
        "flags": entry.flags(params),
        "provenance": entry.provenance,
        "notes": list(entry.notes),
        "rep": entry.rep,
    }
    lines = [
        f"{entry.name}: {entry.description}",
        f"dimension {alg.dim}, basis {' '.join(alg.basis)}",
        f"expected N: {entry.expected_N}",
    ]
    if entry.rep:
        lines.append(f"representation: {entry.rep}")
    if out["params"]:
        lines.append("parameters: " + ", ".join(f"{k}={v}" for k, v in out["params"].items()))
    lines += [f"known invariant: {p}" for p in entry.known_invariants]
    lines += [f"flag: {f}" for f in out["flags"]]
    lines += [f"note: {n}" for n in entry.notes]
    lines.append(f"source: {entry.provenance}")
    _emit(out, args.output, lines)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .reproduce import run_all

    cfg = Config(args)
    results = run_all(seed=cfg.seed, trials=cfg.trials)
    rows = []
    for r in results:
        rows.append({"criterion": r.number, "title": r.title, "passed": r.passed, "seconds": round(r.seconds, 3), "detail": r.detail})
    lines = [f"{'#':>3}  {'result':<6} {'time':>8}  criterion"]
    for r in results:
        status = "PASS" if r.passed else ("SKIP" if r.passed is None else "FAIL")
        lines.append(f"{r.number:>3}  {status:<6} {r.seconds:>7.2f}s  {r.title}: {r.detail}")
    _emit(rows, cfg.output, lines)
    return EXIT_OK if all(r.passed is not False for r in results) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--param", action="append", metavar="NAME=RATIONAL")
    common.add_argument("--radical-only", action="store_true")
    common.add_argument("--paranoid", action="store_true", help="double the rank trials and widen the sampling range")

    parser = argparse.ArgumentParser(prog="lieinv", description="Generalized Casimir invariants of Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("check", "parse an algebra file and run the Jacobi and Levi checks"),
        ("count", "number of functionally independent invariants"),
        ("invariants", "count and search for polynomial invariants"),
        ("verify", "test whether a polynomial is invariant"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file", help="algebra file, or - for standard input")
        if name == "verify":
            p.add_argument("--poly", required=True, help="polynomial expression")
    cat = sub.add_parser("catalog", parents=[common], help="named algebras")
    cat.add_argument("action", choices=("list", "show"))
    cat.add_argument("name", nargs="?")
    cat.add_argument("--emit", action="store_true", help="print the algebra file instead of a summary")
    sub.add_parser("reproduce", parents=[common], help="run the acceptance table")
    return parser


COMMANDS = {
    "check": cmd_check,
    "count": cmd_count,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (InputError, ParseError, UnknownEntry) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArithmeticError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
