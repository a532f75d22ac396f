"""``aspu`` command line.

Exit codes: 0 success, 1 semantic negative (not equivalent, property fails,
fuzz failures), 2 usage, parse or size errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .answer_sets import answer_sets, format_literal_set, same_answer_sets
from .harness import BK, CLASSIC, FAILS, GeneratorConfig, SUITES, fuzz_campaign, run_check
from .n2 import strongly_equivalent
from .operators import OPERATORS, fold_update, update_answer_sets
from .rejection import update_answer_sets_rej
from .syntax import ParseError, Program, parse_program, render_program, valid_atom

ROLES = {
    "initialization": ("p",),
    "idempotence": ("p",),
    "noninterference": ("p1", "p2"),
    "augmented": ("p1", "p2"),
    "bk0": ("p1", "p2", "r"),
    "bk1": ("p1", "p2"),
    "bk2": ("p1", "p2"),
    "bk3": ("p1", "p2"),
    "bk4": ("p1", "p2"),
    "bk5": ("p1", "p2"),
    "bk6": ("p", "p1", "p2"),
}


class UsageError(Exception):
    pass


def _load(path: str) -> Program:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    try:
        return parse_program(text)
    except ParseError as e:
        raise UsageError(f"{path}: {e}") from None


def _print_sets(sets, fmt: str, header: str | None, out) -> None:
    if fmt == "human" and header:
        print(f"{header}: {len(sets)} answer set{'s' if len(sets) != 1 else ''}", file=out)
    for s in sets:
        print(format_literal_set(s), file=out)


def cmd_solve(args, out) -> int:
    p = _load(args.file)
    sig = [a.strip() for a in args.sig.split(",") if a.strip()] if args.sig else None
    bad = [a for a in sig or () if not valid_atom(a)]
    if bad:
        raise UsageError(f"not an atom name: {bad[0]!r}")
    _print_sets(answer_sets(p, sig), args.format, args.file, out)
    return 0


def cmd_update(args, out) -> int:
    programs = [_load(f) for f in args.files]
    if len(programs) < 2:
        raise UsageError("update needs at least two programs")
    if args.operator == "rej-oracle":
        if args.emit_program:
            raise UsageError("rej-oracle has no update program to emit")
        if len(programs) > 2:
            raise UsageError("rej-oracle takes exactly two programs")
        _print_sets(update_answer_sets_rej(*programs), args.format, "rej-oracle", out)
        return 0
    if len(programs) > 2:
        print(f"note: {len(programs)} programs folded left as pairwise updates; "
              "non-normative for n>2", file=sys.stderr)
    u = fold_update(args.operator, programs)
    if args.emit_program:
        if args.format == "human" and u.branch_note:
            print(f"% branch: {u.branch_note}", file=out)
        out.write(render_program(u.program))
    if args.solve or not args.emit_program:
        _print_sets(update_answer_sets(u), args.format, f"update {args.operator}", out)
    return 0


def cmd_equiv(args, out) -> int:
    p1, p2 = _load(args.file1), _load(args.file2)
    if args.strong:
        ok = strongly_equivalent(p1, p2)
        print("strongly-equivalent" if ok else "not strongly-equivalent", file=out)
    else:
        ok = same_answer_sets(p1, p2)
        print("equivalent" if ok else "not equivalent", file=out)
    return 0 if ok else 1


def cmd_check(args, out) -> int:
    roles = ROLES[args.property]
    if len(args.files) != len(roles):
        raise UsageError(f"{args.property} takes {len(roles)} program(s): {', '.join(roles)}")
    inputs = {role: _load(f) for role, f in zip(roles, args.files)}
    v = run_check(args.property, args.operator, inputs)
    if args.format == "records":
        print(json.dumps({"property": v.property, "operator": v.operator, "status": v.status,
                          "note": v.note, "witness": v.witness}, sort_keys=True), file=out)
    else:
        line = f"{v.property} {v.operator}: {v.status}"
        print(line + (f" ({v.note})" if v.note else ""), file=out)
        if v.witness and "left" in v.witness:
            print("  left:  " + " ".join(v.witness["left"]), file=out)
            print("  right: " + " ".join(v.witness["right"]), file=out)
    return 1 if v.status == FAILS else 0


def cmd_fuzz(args, out) -> int:
    cfg = GeneratorConfig(seed=args.seed, atoms=args.atoms, rules_max=args.rules_max)
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    for s in suites:
        if s not in SUITES:
            raise UsageError(f"unknown suite {s!r}; known: {', '.join(SUITES)}")
    report = fuzz_campaign(cfg, args.cases, suites, shrink=not args.no_shrink)
    out.write(report.to_jsonl())
    print(report.summary(), file=sys.stderr)
    return 1 if report.failures() else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aspu", description="Answer sets and updates of extended logic programs.")
    sub = ap.add_subparsers(dest="command", required=True)
    fmt = dict(choices=("human", "records"), default="human")

    s = sub.add_parser("solve", help="print the answer sets of a program")
    s.add_argument("file")
    s.add_argument("--sig", help="comma-separated signature (defaults to the program's atoms)")
    s.add_argument("--format", **fmt)
    s.set_defaults(run=cmd_solve)

    s = sub.add_parser("update", help="update FILE1 by FILE2 (and further files, folded left)")
    s.add_argument("--operator", required=True, choices=OPERATORS + ("rej-oracle",))
    s.add_argument("files", nargs="+")
    s.add_argument("--emit-program", action="store_true", help="print the update program")
    s.add_argument("--solve", action="store_true", help="print update answer sets (default)")
    s.add_argument("--format", **fmt)
    s.set_defaults(run=cmd_update)

    s = sub.add_parser("equiv", help="compare two programs")
    s.add_argument("--strong", action="store_true", help="N2 inter-derivability instead of equal answer sets")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(run=cmd_equiv)

    s = sub.add_parser("check", help="check one update property on given programs")
    s.add_argument("--property", required=True, choices=CLASSIC + BK)
    s.add_argument("--operator", required=True, choices=OPERATORS)
    s.add_argument("files", nargs="+")
    s.add_argument("--format", **fmt)
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("fuzz", help="run seeded property campaigns; JSON lines on stdout")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=100)
    s.add_argument("--atoms", type=int, default=3)
    s.add_argument("--rules-max", type=int, default=4)
    s.add_argument("--suite", required=True, help=f"comma-separated: {', '.join(SUITES)}")
    s.add_argument("--no-shrink", action="store_true")
    s.set_defaults(run=cmd_fuzz)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    # parse, ELP and cap errors are all ValueErrors
    except (UsageError, ValueError) as e:
        print(f"aspu: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
