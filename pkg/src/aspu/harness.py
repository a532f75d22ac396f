"""Property checks for update operators, random program generation and fuzz campaigns.

Every check takes a mapping of named input programs and returns a
:class:`PropertyVerdict`.  A failing verdict carries the rendered inputs, so
:func:`replay` can rebuild and re-run it; campaigns shrink failures by greedy
rule deletion before reporting them.
"""
from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Mapping

from .answer_sets import answer_sets, format_literal_set
from .n2 import n2_consistent, n2_entails_all, strongly_equivalent
from .operators import OPERATORS, UpdateResult, build, build_op3, update
from .rejection import update_answer_sets_rej
from .syntax import (
    BOTTOM, And, Formula, complement_literal, Lit, Not, Or, Program, Rule, formula_literals,
    is_tau_comp, is_tau_free, occurs, occurs_only_under_weak_negation,
    parse_program, render_program, signature_of, tau_completion,
)

ALPHABET = "abcde"
HOLDS, FAILS, NA = "holds", "fails", "n/a"

CLASSIC = ("initialization", "idempotence", "noninterference", "augmented")
BK = ("bk0", "bk1", "bk2", "bk3", "bk4", "bk5", "bk6")


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    atoms: int = 3
    rules_max: int = 4
    p_strong_neg: float = 0.3
    p_weak_neg: float = 0.3
    p_constraint: float = 0.1
    p_fact: float = 0.25
    body_max: int = 2

    def __post_init__(self):
        if not 0 <= self.atoms <= len(ALPHABET):
            raise ValueError(f"atoms must be in 0..{len(ALPHABET)}")
        if not 0 <= self.rules_max <= 6:
            raise ValueError("rules_max must be in 0..6")
        for name in ("p_strong_neg", "p_weak_neg", "p_constraint", "p_fact"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be a probability")


@dataclass
class PropertyVerdict:
    property: str
    operator: str
    status: str
    witness: dict | None = None
    note: str | None = None

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


# ---------------------------------------------------------------- generation

def _atoms(cfg: GeneratorConfig) -> list[str]:
    return list(ALPHABET[:cfg.atoms])


def _literal(rng: random.Random, atoms: list[str], cfg: GeneratorConfig) -> Lit:
    return Lit(rng.choice(atoms), rng.random() < cfg.p_strong_neg)


def _conjunct(rng, atoms, cfg) -> Formula:
    l = _literal(rng, atoms, cfg)
    return Not(l) if rng.random() < cfg.p_weak_neg else l


def _rule(rng: random.Random, atoms: list[str], cfg: GeneratorConfig) -> Rule:
    if rng.random() < cfg.p_constraint:
        n = rng.randint(1, max(1, cfg.body_max))
        return Rule(BOTTOM, _conj([_conjunct(rng, atoms, cfg) for _ in range(n)]))
    head = _literal(rng, atoms, cfg)
    if rng.random() < cfg.p_fact:
        return Rule(head)
    n = rng.randint(1, max(1, cfg.body_max))
    return Rule(head, _conj([_conjunct(rng, atoms, cfg) for _ in range(n)]))


def _conj(parts: list[Formula]) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def gen_elp(cfg: GeneratorConfig, rng: random.Random | None = None) -> Program:
    rng = rng or random.Random(cfg.seed)
    atoms = _atoms(cfg)
    if not atoms:
        return Program(())
    return Program(tuple(_rule(rng, atoms, cfg) for _ in range(rng.randint(min(1, cfg.rules_max), cfg.rules_max))))


def gen_entailed(q: Program, rng: random.Random, cfg: GeneratorConfig, allow_tau: bool = True,
                 focus: Iterable[Lit] = ()) -> Program:
    """A small program every rule of which ``q`` N2-derives.

    Tautologies ``l :- l, ...`` prefer literals from ``focus`` half of the time.
    """
    atoms = _atoms(cfg) or ["a"]
    focus = sorted(focus)
    out = []
    for _ in range(rng.randint(1, 2)):
        kind = rng.choice(["weaken", "copy", "tau"] if allow_tau else ["weaken", "copy"])
        if kind == "tau":
            l = rng.choice(focus) if focus and rng.random() < 0.5 else _literal(rng, atoms, cfg)
            body = l if rng.random() < 0.5 else And(l, _conjunct(rng, atoms, cfg))
            out.append(Rule(l, body))
        elif q.rules:
            r = rng.choice(q.rules)
            if kind == "weaken":
                extra = _conjunct(rng, atoms, cfg)
                r = Rule(r.head, extra if r.is_fact else And(r.body, extra))
            out.append(r)
    r = Program(tuple(out))
    if not allow_tau and not is_tau_free(r):
        r = Program(tuple(x for x in r.rules if is_tau_free(Program((x,)))))
    return r


def gen_formula(rng: random.Random, atoms: list[str], cfg: GeneratorConfig, depth: int = 2) -> Formula:
    if depth == 0 or rng.random() < 0.35:
        return _literal(rng, atoms, cfg)
    kind = rng.choice(["and", "or", "not"])
    if kind == "not":
        return Not(gen_formula(rng, atoms, cfg, depth - 1))
    a, b = gen_formula(rng, atoms, cfg, depth - 1), gen_formula(rng, atoms, cfg, depth - 1)
    return And(a, b) if kind == "and" else Or(a, b)


def _inject_negated(p: Program, x: Lit, rng: random.Random) -> Program:
    rules = []
    for r in p.rules:
        if rng.random() < 0.5:
            guard = Not(x) if rng.random() < 0.5 else Not(And(x, r.body))
            r = Rule(r.head, guard if r.is_fact else And(r.body, guard))
        rules.append(r)
    return Program(tuple(rules), p.signature)


# ---------------------------------------------------------------- checks

def _family(sets) -> list[str]:
    return [format_literal_set(s) for s in sets]


def _witness(inputs: Mapping[str, Program], left=None, right=None, detail=None) -> dict:
    w = {"inputs": {k: render_program(v) for k, v in inputs.items()}}
    if left is not None:
        w["left"], w["right"] = _family(left), _family(right)
    if detail:
        w["detail"] = detail
    return w


def _compare(prop, op, inputs, left, right, note=None) -> PropertyVerdict:
    if left == right:
        return PropertyVerdict(prop, op, HOLDS, note=note)
    return PropertyVerdict(prop, op, FAILS, _witness(inputs, left, right), note)


def _upd(op: str, p1: Program, p2: Program) -> list[frozenset]:
    return update(op, p1, p2)


def check_classic(prop: str, op: str, inputs: Mapping[str, Program]) -> PropertyVerdict:
    if prop in ("initialization", "idempotence"):
        p = inputs["p"]
        first = Program(()) if prop == "initialization" else p
        return _compare(prop, op, inputs, _upd(op, first, p), answer_sets(p))
    p1, p2 = inputs["p1"], inputs["p2"]
    if prop == "noninterference":
        if signature_of(p1) & signature_of(p2):
            raise ValueError("noninterference needs programs over disjoint alphabets")
        return _compare(prop, op, inputs, _upd(op, p1, p2), _upd(op, p2, p1))
    if prop == "augmented":
        if not set(p1.rules) <= set(p2.rules):
            raise ValueError("augmented update needs every rule of p1 in p2")
        return _compare(prop, op, inputs, _upd(op, p1, p2), answer_sets(p2))
    raise ValueError(f"unknown classic property {prop!r}")


def base_form(op: str, p1: Program, p2: Program) -> UpdateResult:
    """The update program over the input alphabet; op1 is replaced by its op3 equivalent."""
    return build_op3(p1, p2) if op == "op1" else build(op, p1, p2)


def check_bk(prop: str, op: str, inputs: Mapping[str, Program]) -> PropertyVerdict:
    g = inputs.get
    if prop == "bk0":
        p1, p2, r = g("p1"), g("p2"), g("r")
        if not n2_entails_all(p2, r):
            return PropertyVerdict(prop, op, NA, note="p2 does not derive r")
        return _compare(prop, op, inputs, _upd(op, p1, p2), _upd(op, p1, p2 + r))
    if prop == "bk1":
        u = build(op, g("p1"), g("p2"))
        text = render_program(u.program)
        if parse_program(text).rules == u.program.rules:
            return PropertyVerdict(prop, op, HOLDS)
        return PropertyVerdict(prop, op, FAILS, _witness(inputs, detail="output does not re-parse"))
    if prop in ("bk2", "bk3", "bk5"):
        p1, p2 = g("p1"), g("p2")
        u = base_form(op, p1, p2).program
        note = "checked on the base-signature form" if op == "op1" else None
        if prop == "bk2":
            ok = n2_entails_all(u, p2)
        elif prop == "bk3":
            ok = n2_entails_all(p1 + p2, u)
        else:
            if n2_consistent(p2):
                return PropertyVerdict(prop, op, NA, note="p2 is N2-consistent")
            ok = not n2_consistent(u)
        if ok:
            return PropertyVerdict(prop, op, HOLDS, note=note)
        return PropertyVerdict(prop, op, FAILS, _witness(inputs, detail=f"{prop} entailment fails"), note)
    if prop == "bk4":
        p1, p2 = g("p1"), g("p2")
        union = answer_sets(p1 + p2)
        if not union:
            return PropertyVerdict(prop, op, NA, note="p1 + p2 has no answer sets")
        return _compare(prop, op, inputs, union, _upd(op, p1, p2))
    if prop == "bk6":
        p, q1, q2 = g("p"), g("p1"), g("p2")
        if not strongly_equivalent(q1, q2):
            return PropertyVerdict(prop, op, NA, note="p1 and p2 are not N2-equivalent")
        return _compare(prop, op, inputs, _upd(op, p, q1), _upd(op, p, q2))
    raise ValueError(f"unknown BK property {prop!r}")


def check_completion(p: Program, x: Lit, f: Formula, scope_variant: bool) -> PropertyVerdict:
    prop = "scope-completion" if scope_variant else "completion"
    inputs = {"p": p, "link": Program((Rule(x, f),))}
    if scope_variant:
        if not occurs_only_under_weak_negation(x, p) or x in formula_literals(f):
            return PropertyVerdict(prop, "-", NA, note="x occurs outside the scope of not, or in F")
    elif occurs(x, p):
        return PropertyVerdict(prop, "-", NA, note="x occurs in p")
    sig = signature_of(p) | {x.atom} | {l.atom for l in formula_literals(f)}
    one_way = Program(p.rules + (Rule(x, f),), sig)
    both_ways = Program(p.rules + (Rule(x, f), Rule(f, x)), sig)
    return _compare(prop, "-", inputs, answer_sets(one_way), answer_sets(both_ways, method="enumerate"))


def check_op1_op3(op, inputs) -> PropertyVerdict:
    p1, p2 = inputs["p1"], inputs["p2"]
    return _compare("op1-vs-op3", "op1", inputs, _upd("op1", p1, p2), _upd("op3", p1, p2))


def check_tau_comp(op, inputs) -> PropertyVerdict:
    p1, p2 = inputs["p1"], inputs["p2"]
    sig = signature_of(p1) | signature_of(p2)
    if not is_tau_comp(p2, sig):
        return PropertyVerdict("op1-vs-op2-taucomp", "op1", NA, note="p2 is not tau-comp")
    return _compare("op1-vs-op2-taucomp", "op1", inputs, _upd("op1", p1, p2), _upd("op2", p1, p2))


def check_oracle(op, inputs) -> PropertyVerdict:
    p1, p2 = inputs["p1"], inputs["p2"]
    return _compare("oracle-vs-op1", "op1", inputs, update_answer_sets_rej(p1, p2), _upd("op1", p1, p2))


def check_rej_extension(op, inputs) -> PropertyVerdict:
    """Adding tau-free rules derivable from p2 to p2 leaves the results unchanged."""
    p1, p2, r = inputs["p1"], inputs["p2"], inputs["r"]
    if not is_tau_free(r) or not n2_entails_all(p2, r):
        return PropertyVerdict("rej-extension", op, NA, note="r is not tau-free or not derived by p2")
    return _compare("rej-extension", op, inputs, update(op, p1, p2), update(op, p1, p2 + r))


def _completion_from_inputs(prop):
    def run(op, inputs):
        (link,) = inputs["link"].rules
        return check_completion(inputs["p"], link.head, link.body, prop == "scope-completion")
    return run


CHECKS: dict[str, Callable[[str, Mapping[str, Program]], PropertyVerdict]] = {
    **{prop: (lambda prop: lambda op, inputs: check_classic(prop, op, inputs))(prop) for prop in CLASSIC},
    **{prop: (lambda prop: lambda op, inputs: check_bk(prop, op, inputs))(prop) for prop in BK},
    "op1-vs-op3": check_op1_op3,
    "op1-vs-op2-taucomp": check_tau_comp,
    "oracle-vs-op1": check_oracle,
    "rej-extension": check_rej_extension,
    "completion": _completion_from_inputs("completion"),
    "scope-completion": _completion_from_inputs("scope-completion"),
}


def run_check(prop: str, op: str, inputs: Mapping[str, Program]) -> PropertyVerdict:
    try:
        check = CHECKS[prop]
    except KeyError:
        raise ValueError(f"unknown property {prop!r}") from None
    return check(op, inputs)


def replay(v: PropertyVerdict) -> PropertyVerdict:
    if not v.witness:
        raise ValueError("verdict has no witness to replay")
    inputs = {k: parse_program(t) for k, t in v.witness["inputs"].items()}
    return run_check(v.property, v.operator, inputs)


def minimize(v: PropertyVerdict, inputs: Mapping[str, Program]) -> PropertyVerdict:
    """Drop rules one at a time while the check keeps failing."""
    current = dict(inputs)
    best = v
    shrinking = True
    while shrinking:
        shrinking = False
        for name in list(current):
            prog = current[name]
            for k in range(len(prog.rules)):
                trial = dict(current)
                trial[name] = Program(prog.rules[:k] + prog.rules[k + 1:], prog.signature)
                try:
                    res = run_check(v.property, v.operator, trial)
                except ValueError:
                    continue
                if res.status == FAILS:
                    current, best, shrinking = trial, res, True
                    break
            if shrinking:
                break
    return best


# ---------------------------------------------------------------- campaigns

def _pair(rng, cfg):
    return gen_elp(cfg, rng), gen_elp(cfg, rng)


def _case_op1_vs_op3(rng, cfg):
    p1, p2 = _pair(rng, cfg)
    yield "op1-vs-op3", "op1", {"p1": p1, "p2": p2}


def _case_op1_vs_op2_taucomp(rng, cfg):
    p1, p2 = _pair(rng, cfg)
    p2 = tau_completion(p2, signature_of(p1) | signature_of(p2))
    yield "op1-vs-op2-taucomp", "op1", {"p1": p1, "p2": p2}


def _case_oracle_vs_op1(rng, cfg):
    p1, p2 = _pair(rng, cfg)
    yield "oracle-vs-op1", "op1", {"p1": p1, "p2": p2}


def _bk_inputs(rng, cfg, allow_tau):
    p, q1 = _pair(rng, cfg)
    p2 = gen_elp(cfg, rng)
    if rng.random() < 0.3:
        # an N2-inconsistent update so that bk5 is informative
        l = Lit(rng.choice(_atoms(cfg) or ["a"]))
        p2 = p2 + Program((Rule(l), Rule(Lit(l.atom, True))))
    q2 = q1 + gen_entailed(q1, rng, cfg, allow_tau, focus=_clash_targets(p))
    return p, q1, q2, p2


def _case_bk(op, props, rng, cfg, tau_free_bk6):
    p, q1, q2, p2 = _bk_inputs(rng, cfg, allow_tau=not tau_free_bk6)
    for prop in props:
        if prop == "bk6":
            yield prop, op, {"p": p, "p1": q1, "p2": q2}
        else:
            yield prop, op, {"p1": p, "p2": p2}


def _case_op3_principles(rng, cfg):
    yield from _case_bk("op3", ("bk1", "bk2", "bk3", "bk5", "bk6"), rng, cfg, tau_free_bk6=True)


def _case_op3r_principles(rng, cfg):
    yield from _case_bk("op3r", ("bk1", "bk2", "bk3", "bk4", "bk5", "bk6"), rng, cfg, tau_free_bk6=False)


def _clash_targets(p: Program) -> set[Lit]:
    return {complement_literal(r.head) for r in p.rules if isinstance(r.head, Lit)}


def _case_bk0_vs_bk6(rng, cfg):
    p, q1 = _pair(rng, cfg)
    q2 = q1 + gen_entailed(q1, rng, cfg, allow_tau=True, focus=_clash_targets(p))
    for op in OPERATORS:
        yield "bk0-vs-bk6", op, {"p": p, "p1": q1, "p2": q2}


def _case_rej_extension(rng, cfg):
    p1, p2 = _pair(rng, cfg)
    inputs = {"p1": p1, "p2": p2, "r": gen_entailed(p2, rng, cfg, allow_tau=False)}
    for op in ("op1", "rej-oracle"):
        yield "rej-extension", op, inputs


def _case_augmented(rng, cfg):
    p1 = gen_elp(cfg, rng)
    p2 = Program(p1.rules + gen_elp(cfg, rng).rules)
    for op in ("op1", "op2", "op3"):
        yield "augmented", op, {"p1": p1, "p2": p2}


def _case_completion(rng, cfg, scope):
    atoms = _atoms(cfg) or ["a"]
    p = gen_elp(cfg, rng)
    p = Program(p.rules, frozenset(atoms))
    x = Lit("x", rng.random() < 0.5)
    if scope:
        p = _inject_negated(p, x, rng)
    f = gen_formula(rng, atoms, cfg)
    yield ("scope-completion" if scope else "completion"), "-", {"p": p, "link": Program((Rule(x, f),))}


SUITES: dict[str, Callable] = {
    "op1-vs-op3": _case_op1_vs_op3,
    "op1-vs-op2-taucomp": _case_op1_vs_op2_taucomp,
    "oracle-vs-op1": _case_oracle_vs_op1,
    "op3-principles": _case_op3_principles,
    "op3r-principles": _case_op3r_principles,
    "bk0-vs-bk6": _case_bk0_vs_bk6,
    "rej-extension": _case_rej_extension,
    "augmented": _case_augmented,
    "completion": lambda rng, cfg: _case_completion(rng, cfg, False),
    "scope-completion": lambda rng, cfg: _case_completion(rng, cfg, True),
}


def check_bk0_bk6(op: str, inputs: Mapping[str, Program]) -> PropertyVerdict:
    """bk6 on ``(p, q1, q2)`` must agree with bk0 on both ``(p, q1, q2)`` and ``(p, q2, q1)``."""
    p, q1, q2 = inputs["p"], inputs["p1"], inputs["p2"]
    six = check_bk("bk6", op, {"p": p, "p1": q1, "p2": q2})
    if six.status == NA:
        return PropertyVerdict("bk0-vs-bk6", op, NA, note=six.note)
    a = check_bk("bk0", op, {"p1": p, "p2": q1, "r": q2})
    b = check_bk("bk0", op, {"p1": p, "p2": q2, "r": q1})
    zero = HOLDS if a.holds and b.holds else FAILS
    note = f"bk6 {six.status}, bk0 {zero}"
    if zero == six.status:
        return PropertyVerdict("bk0-vs-bk6", op, HOLDS, note=note)
    return PropertyVerdict("bk0-vs-bk6", op, FAILS, _witness(inputs, detail=note), note)


CHECKS["bk0-vs-bk6"] = check_bk0_bk6


@dataclass
class FuzzReport:
    records: list[dict] = field(default_factory=list)

    def counts(self) -> Counter:
        return Counter((r["suite"], r["property"], r["operator"], r["status"]) for r in self.records)

    def failures(self) -> list[dict]:
        return [r for r in self.records if r["status"] == FAILS]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)

    def summary(self) -> str:
        lines = []
        for (suite, prop, op, status), n in sorted(self.counts().items()):
            lines.append(f"{suite:<17} {prop:<20} {op:<10} {status:<6} {n}")
        return "\n".join(lines)


def fuzz_campaign(cfg: GeneratorConfig, cases: int, suite: Iterable[str],
                  shrink: bool = True) -> FuzzReport:
    report = FuzzReport()
    for name in suite:
        try:
            make = SUITES[name]
        except KeyError:
            raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
        for i in range(cases):
            rng = random.Random(f"{cfg.seed}:{name}:{i}")
            for prop, op, inputs in make(rng, cfg):
                v = run_check(prop, op, inputs)
                if v.status == FAILS and shrink:
                    v = minimize(v, inputs)
                rec = {"seed": cfg.seed, "case": i, "suite": name, **asdict(v)}
                report.records.append(rec)
    return report
