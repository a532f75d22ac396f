"""Update operators for a pair ``(p1, p2)`` where ``p2`` is the newer program.

``op1``   causal-rejection update program over an extended signature
          (indexed copies ``a__1``/``a__2`` and one ``rej`` atom per rule of p1)
``op2``   guard every rule of p1 with ``not -L``
``op2c``  the same, but only for rules that clash with a head in p2
``op3``   guard with ``not sup(comp(L), p2)``; no extra atoms
``op3r``  ``p1 + p2`` when that has answer sets, else op3 against p2 stripped
          of ``l :- l, ...`` rules
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .answer_sets import answer_sets, project, sort_answer_sets
from .syntax import (
    BOTTOM, TOP, And, Bottom, Formula, Lit, Not, Program, Rule, Top,
    check_elp, complement_literal, disjoin, formula_literals, signature_of,
    strip_tau_rules,
)

OPERATORS = ("op1", "op2", "op2c", "op3", "op3r")


@dataclass(frozen=True)
class StarSignature:
    base: frozenset[str]
    indexed: Mapping[tuple[str, int], str]
    rej: Mapping[int, str]           # rule position in p1 -> rej atom

    def atoms(self) -> frozenset[str]:
        return self.base | frozenset(self.indexed.values()) | frozenset(self.rej.values())


@dataclass(frozen=True)
class UpdateResult:
    program: Program
    projection_signature: frozenset[str]
    operator: str
    branch_note: str | None = None
    star: StarSignature | None = field(default=None, compare=False)


def _guard(body: Formula, extra: Formula) -> Formula:
    return extra if isinstance(body, Top) else And(body, extra)


def _prepare(p1: Program, p2: Program) -> tuple[Program, Program, frozenset[str]]:
    check_elp(p1, "p1")
    check_elp(p2, "p2")
    base = signature_of(p1) | signature_of(p2)
    drop = lambda p: Program(tuple(r for r in p.rules if not isinstance(r.head, Top)), p.signature)
    return drop(p1), drop(p2), base


def _constraints(*programs: Program) -> list[Rule]:
    return [r for p in programs for r in p.rules if isinstance(r.head, Bottom)]


def _fresh(name: str, used: set[str]) -> str:
    while name in used:
        name += "_"
    used.add(name)
    return name


def _star_signature(p1: Program, base: frozenset[str]) -> StarSignature:
    used = set(base)
    indexed = {}
    for a in sorted(base):
        for i in (1, 2):
            indexed[a, i] = _fresh(f"{a}__{i}", used)
    rej = {k: _fresh(f"rej__r{k}", used) for k, r in enumerate(p1.rules)
           if not isinstance(r.head, Bottom)}
    return StarSignature(base, indexed, rej)


def build_op1(p1: Program, p2: Program) -> UpdateResult:
    p1, p2, base = _prepare(p1, p2)
    star = _star_signature(p1, base)

    def idx(l: Lit, i: int) -> Lit:
        return Lit(star.indexed[l.atom, i], l.neg)

    rules = _constraints(p1, p2)
    for k, r in enumerate(p1.rules):
        if isinstance(r.head, Bottom):
            continue
        rej = Lit(star.rej[k])
        rules.append(Rule(idx(r.head, 1), _guard(r.body, Not(rej))))
        rules.append(Rule(rej, _guard(r.body, idx(complement_literal(r.head), 2))))
    for r in p2.rules:
        if not isinstance(r.head, Bottom):
            rules.append(Rule(idx(r.head, 2), r.body))
    occurring = set()
    for r in p1.rules + p2.rules:
        occurring |= formula_literals(r.head) | formula_literals(r.body)
    for l in sorted(occurring):
        rules.append(Rule(idx(l, 1), idx(l, 2)))
        rules.append(Rule(l, idx(l, 1)))
    return UpdateResult(Program(tuple(rules)), base, "op1", star=star)


def build_op2(p1: Program, p2: Program) -> UpdateResult:
    p1, p2, base = _prepare(p1, p2)
    rules = _constraints(p1, p2)
    for r in p1.rules:
        if not isinstance(r.head, Bottom):
            rules.append(Rule(r.head, _guard(r.body, Not(complement_literal(r.head)))))
    rules += [r for r in p2.rules if not isinstance(r.head, Bottom)]
    return UpdateResult(Program(tuple(rules)), base, "op2")


def build_op2c(p1: Program, p2: Program) -> UpdateResult:
    p1, p2, base = _prepare(p1, p2)
    newer_heads = {r.head for r in p2.rules if isinstance(r.head, Lit)}
    rules = _constraints(p1, p2)
    for r in p1.rules:
        if isinstance(r.head, Bottom):
            continue
        comp = complement_literal(r.head)
        rules.append(Rule(r.head, _guard(r.body, Not(comp))) if comp in newer_heads else r)
    rules += [r for r in p2.rules if not isinstance(r.head, Bottom)]
    return UpdateResult(Program(tuple(rules)), base, "op2c")


def sup(l: Lit, p: Program) -> Formula:
    """Disjunction of the bodies of ``p``'s rules for ``l`` (rule order).

    BOTTOM when no rule has head ``l``; TOP when one of them is a fact.
    """
    bodies = [r.body for r in p.rules if r.head == l]
    if not bodies:
        return BOTTOM
    if any(isinstance(b, Top) for b in bodies):
        return TOP
    return disjoin(bodies)


def build_op3(p1: Program, p2: Program) -> UpdateResult:
    p1, p2, base = _prepare(p1, p2)
    rules = _constraints(p1, p2)
    for r in p1.rules:
        if isinstance(r.head, Bottom):
            continue
        s = sup(complement_literal(r.head), p2)
        rules.append(r if isinstance(s, Bottom) else Rule(r.head, _guard(r.body, Not(s))))
    rules += [r for r in p2.rules if not isinstance(r.head, Bottom)]
    return UpdateResult(Program(tuple(rules)), base, "op3")


def build_op3r(p1: Program, p2: Program) -> UpdateResult:
    _, _, base = _prepare(p1, p2)
    union = p1 + p2
    if answer_sets(union):
        return UpdateResult(union, base, "op3r", "union")
    u = build_op3(p1, strip_tau_rules(p2))
    return UpdateResult(u.program, base, "op3r", "rejected-tautology-free")


BUILDERS = {
    "op1": build_op1,
    "op2": build_op2,
    "op2c": build_op2c,
    "op3": build_op3,
    "op3r": build_op3r,
}


def build(op: str, p1: Program, p2: Program) -> UpdateResult:
    try:
        return BUILDERS[op](p1, p2)
    except KeyError:
        raise ValueError(f"unknown operator {op!r}; expected one of {', '.join(OPERATORS)}") from None


def update_answer_sets(u: UpdateResult) -> list[frozenset]:
    return sort_answer_sets(project(m, u.projection_signature) for m in answer_sets(u.program))


def update(op: str, p1: Program, p2: Program) -> list[frozenset]:
    """Update answer sets of ``(p1, p2)`` under ``op`` (or ``"rej-oracle"``)."""
    if op == "rej-oracle":
        from .rejection import update_answer_sets_rej
        return update_answer_sets_rej(p1, p2)
    return update_answer_sets(build(op, p1, p2))


def fold_update(op: str, programs: Sequence[Program]) -> UpdateResult:
    """Left fold ``((p1 op p2) op p3) ...``; a convenience, not a semantics for n > 2."""
    if len(programs) < 2:
        raise ValueError("need at least two programs")
    result = build(op, programs[0], programs[1])
    base = result.projection_signature
    for p in programs[2:]:
        result = build(op, result.program, p)
        base = base | signature_of(p)
    return UpdateResult(result.program, base, op, result.branch_note, result.star)
