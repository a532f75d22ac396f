"""Literals, formulas, rules and programs, plus the text format.

Formulas are immutable trees.  Strong negation only ever sits on atoms inside
:class:`Lit`; :class:`SNeg` (strong negation of a compound) and
:class:`Implies` exist for the logic backend and never come out of the parser.

Text format::

    sleep :- night, not watch-tv, not other.
    night.
    -tv-on :- power-failure ; (assignment-due, working).
    :- a, b.          % constraint

``-`` is strong negation, ``not`` weak negation, ``,`` conjunction and ``;``
disjunction.  ``true``/``false`` are the constants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = [
    "Formula", "Lit", "And", "Or", "Not", "Implies", "SNeg", "TOP", "BOTTOM",
    "Top", "Bottom", "Rule", "Program", "ParseError", "NotELPError",
    "parse_program", "parse_rule", "parse_formula", "render_program",
    "render_rule", "render_formula", "signature_of", "complement_literal",
    "literals_over", "occurs", "occurs_only_under_weak_negation",
    "is_tau_comp", "tau_completion", "is_tau_free", "strip_tau_rules",
    "is_elp", "check_elp", "body_conjuncts", "conjoin", "disjoin",
    "formula_atoms", "formula_literals", "literal_key", "valid_atom",
]

ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*")
RESERVED = frozenset({"not", "true", "false"})


def valid_atom(name: str) -> bool:
    return ATOM_RE.fullmatch(name) is not None and name not in RESERVED


class Formula:
    __slots__ = ()


@dataclass(frozen=True, order=True)
class Lit(Formula):
    atom: str
    neg: bool = False

    def __str__(self) -> str:
        return ("-" if self.neg else "") + self.atom


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class Implies(Formula):
    ante: Formula
    cons: Formula


@dataclass(frozen=True)
class SNeg(Formula):
    arg: Formula


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class Rule:
    """``head <- body``.  Head BOTTOM is a constraint, head TOP a tautology.

    Internally the head may be any formula (used for ``F <- x`` halves of
    equivalences); the parser and the operators only produce literal, TOP or
    BOTTOM heads.
    """
    head: Formula
    body: Formula = TOP

    @property
    def is_constraint(self) -> bool:
        return isinstance(self.head, Bottom)

    @property
    def is_fact(self) -> bool:
        return isinstance(self.body, Top) and isinstance(self.head, Lit)

    def as_formula(self) -> Formula:
        return Implies(self.body, self.head)

    def __str__(self) -> str:
        return render_rule(self)


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...] = ()
    signature: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "signature", frozenset(self.signature))

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __add__(self, other: "Program") -> "Program":
        return Program(self.rules + other.rules, self.signature | other.signature)

    def atoms(self) -> frozenset[str]:
        return signature_of(self)

    def __str__(self) -> str:
        return render_program(self)


# ---------------------------------------------------------------- helpers

def literal_key(lit: Lit) -> str:
    return str(lit)


def complement_literal(lit: Lit) -> Lit:
    return Lit(lit.atom, not lit.neg)


def literals_over(atoms: Iterable[str]) -> list[Lit]:
    out = []
    for a in sorted(atoms):
        out.append(Lit(a))
        out.append(Lit(a, True))
    return out


def conjoin(parts: Iterable[Formula]) -> Formula:
    """Left-associated conjunction; empty gives TOP."""
    result = None
    for p in parts:
        result = p if result is None else And(result, p)
    return TOP if result is None else result


def disjoin(parts: Iterable[Formula]) -> Formula:
    """Left-associated disjunction; empty gives BOTTOM."""
    result = None
    for p in parts:
        result = p if result is None else Or(result, p)
    return BOTTOM if result is None else result


def body_conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, Top):
        return []
    if isinstance(f, And):
        return body_conjuncts(f.left) + body_conjuncts(f.right)
    return [f]


def _walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (And, Or)):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, Implies):
            stack.append(g.cons)
            stack.append(g.ante)
        elif isinstance(g, (Not, SNeg)):
            stack.append(g.arg)


def formula_literals(f: Formula) -> set[Lit]:
    return {g for g in _walk(f) if isinstance(g, Lit)}


def formula_atoms(f: Formula) -> set[str]:
    return {g.atom for g in _walk(f) if isinstance(g, Lit)}


def signature_of(p: Program) -> frozenset[str]:
    atoms = set(p.signature)
    for r in p.rules:
        atoms |= formula_atoms(r.head)
        atoms |= formula_atoms(r.body)
    return frozenset(atoms)


# ---------------------------------------------------------------- occurrence

def occurs(lit: Lit, f: Formula | Rule | Program) -> bool:
    """Polarity-exact occurrence: ``a`` does not occur in ``-a``."""
    if isinstance(f, Program):
        return any(occurs(lit, r) for r in f.rules)
    if isinstance(f, Rule):
        return occurs(lit, f.head) or occurs(lit, f.body)
    return lit in formula_literals(f)


def _occurs_outside_not(lit: Lit, f: Formula) -> bool:
    if isinstance(f, Lit):
        return f == lit
    if isinstance(f, Not):
        return False
    if isinstance(f, (And, Or)):
        return _occurs_outside_not(lit, f.left) or _occurs_outside_not(lit, f.right)
    if isinstance(f, Implies):
        return _occurs_outside_not(lit, f.ante) or _occurs_outside_not(lit, f.cons)
    if isinstance(f, SNeg):
        return _occurs_outside_not(lit, f.arg)
    return False


def occurs_only_under_weak_negation(lit: Lit, p: Program) -> bool:
    return not any(
        _occurs_outside_not(lit, r.head) or _occurs_outside_not(lit, r.body)
        for r in p.rules)


# ---------------------------------------------------------------- ELPs and tautologies

class NotELPError(ValueError):
    """Raised when an operation needs an extended logic program."""


def _elp_conjunct(f: Formula) -> bool:
    if isinstance(f, (Lit, Top, Bottom)):
        return True
    return isinstance(f, Not) and isinstance(f.arg, (Lit, Top, Bottom))


def is_elp(p: Program) -> bool:
    for r in p.rules:
        if not isinstance(r.head, (Lit, Top, Bottom)):
            return False
        if not all(_elp_conjunct(c) for c in body_conjuncts(r.body)):
            return False
    return True


def check_elp(p: Program, what: str = "program") -> None:
    for r in p.rules:
        if not isinstance(r.head, (Lit, Top, Bottom)) or not all(
                _elp_conjunct(c) for c in body_conjuncts(r.body)):
            raise NotELPError(f"{what} is not an extended logic program: rule {render_rule(r)!r}")


def _is_tau_rule(r: Rule) -> bool:
    return isinstance(r.head, Lit) and r.head in body_conjuncts(r.body)


def is_tau_comp(p: Program, sig: Iterable[str]) -> bool:
    present = set(p.rules)
    return all(Rule(l, l) in present for l in literals_over(sig))


def tau_completion(p: Program, sig: Iterable[str]) -> Program:
    present = set(p.rules)
    extra = [Rule(l, l) for l in literals_over(sig) if Rule(l, l) not in present]
    return Program(p.rules + tuple(extra), p.signature | frozenset(sig))


def is_tau_free(p: Program) -> bool:
    check_elp(p)
    return not any(_is_tau_rule(r) for r in p.rules)


def strip_tau_rules(p: Program) -> Program:
    """Drop every ``l <- l, ...`` rule and every rule with head TOP."""
    check_elp(p)
    kept = tuple(r for r in p.rules if not _is_tau_rule(r) and not isinstance(r.head, Top))
    return Program(kept, p.signature)


# ---------------------------------------------------------------- rendering

def render_formula(f: Formula) -> str:
    if isinstance(f, Lit):
        return str(f)
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        return "not " + _render_unit(f.arg)
    if isinstance(f, And):
        return _render_chain(f, And, ", ")
    if isinstance(f, Or):
        return _render_chain(f, Or, " ; ")
    if isinstance(f, Implies):
        return f"({render_formula(f.cons)} <- {render_formula(f.ante)})"
    if isinstance(f, SNeg):
        return "-(" + render_formula(f.arg) + ")"
    raise TypeError(f"not a formula: {f!r}")


def _render_unit(f: Formula) -> str:
    if isinstance(f, (And, Or)):
        return "(" + render_formula(f) + ")"
    return render_formula(f)


def _render_chain(f: Formula, kind: type, sep: str) -> str:
    # left spine is flattened; anything else compound gets parentheses so that
    # parsing (left-assoc) gives back the same tree
    parts = []
    g = f
    while isinstance(g, kind):
        parts.append(_render_unit(g.right))
        g = g.left
    parts.append(_render_unit(g))
    return sep.join(reversed(parts))


def render_rule(r: Rule) -> str:
    if isinstance(r.head, Bottom):
        return f":- {render_formula(r.body)}."
    head = render_formula(r.head) if isinstance(r.head, (Lit, Top)) else _render_unit(r.head)
    if isinstance(r.body, Top):
        return f"{head}."
    return f"{head} :- {render_formula(r.body)}."


def render_program(p: Program) -> str:
    return "".join(render_rule(r) + "\n" for r in p.rules)


# ---------------------------------------------------------------- parsing

class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<punct>[.,;()])
  | (?P<neg>-(?=[A-Za-z]))
  | (?P<name>[A-Za-z][A-Za-z0-9_\-]*)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        val = m.group()
        if kind not in ("ws", "comment"):
            if kind in ("punct", "if"):
                kind = val
            elif kind == "name" and val in RESERVED:
                kind = val
            toks.append((kind, val, line, pos - line_start + 1))
        nl = val.count("\n")
        if nl:
            line += nl
            line_start = pos + val.rindex("\n") + 1
        pos = m.end()
    toks.append(("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str | None = None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = {"eof": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", tok[2], tok[3])
        self.i += 1
        return tok

    def error(self, msg: str):
        tok = self.toks[self.i]
        got = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"{msg}, got {got}", tok[2], tok[3])

    def program(self) -> Program:
        rules = []
        while self.peek() != "eof":
            rules.append(self.rule())
        return Program(tuple(rules))

    def rule(self) -> Rule:
        if self.peek() == ":-":
            self.take()
            body = self.disj()
            self.take(".")
            return Rule(BOTTOM, body)
        kind = self.peek()
        if kind == "true":
            self.take()
            head = TOP
        elif kind == "false":
            self.take()
            head = BOTTOM
        elif kind in ("neg", "name"):
            head = self.lit()
        else:
            self.error("expected a rule head")
        if self.peek() == ":-":
            self.take()
            body = self.disj()
        else:
            body = TOP
        self.take(".")
        return Rule(head, body)

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == ";":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unit()
        while self.peek() == ",":
            self.take()
            f = And(f, self.unit())
        return f

    def unit(self) -> Formula:
        kind = self.peek()
        if kind == "not":
            self.take()
            return Not(self.unit())
        if kind == "(":
            self.take()
            f = self.disj()
            self.take(")")
            return f
        if kind == "true":
            self.take()
            return TOP
        if kind == "false":
            self.take()
            return BOTTOM
        if kind in ("neg", "name"):
            return self.lit()
        self.error("expected a literal, 'not', 'true', 'false' or '('")

    def lit(self) -> Lit:
        neg = False
        if self.peek() == "neg":
            self.take()
            neg = True
        if self.peek() in RESERVED:
            self.error("reserved word used as atom")
        _, name, _, _ = self.take("name")
        return Lit(name, neg)


def parse_program(text: str) -> Program:
    return _Parser(text).program()


def parse_rule(text: str) -> Rule:
    p = _Parser(text)
    r = p.rule()
    p.take("eof")
    return r


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.disj()
    p.take("eof")
    return f
