import itertools

import pytest
from hypothesis import given, settings

from aspu.answer_sets import (
    answer_sets, format_literal_set, is_answer_set, is_conservative_extension, is_consistent,
    reduct_fixpoint, same_answer_sets,
)
from aspu.n2 import n2_consistent
from aspu.operators import build_op1, build_op3
from aspu.syntax import Lit, Not, Program, body_conjuncts, literals_over, parse_program, signature_of

from conftest import family, load
from strategies import augmented_programs, elps

a, b = Lit("a"), Lit("b")


def gelfond_lifschitz(p: Program, sig) -> list[frozenset]:
    """Textbook reduct-and-closure answer sets of an extended program."""
    atoms = sorted(sig)
    found = []
    for choice in itertools.product((0, 1, 2), repeat=len(atoms)):
        m = frozenset(Lit(x, c == 2) for x, c in zip(atoms, choice) if c)
        reduct = []
        for r in p.rules:
            parts = body_conjuncts(r.body)
            if any(isinstance(q, Not) and q.arg in m for q in parts):
                continue
            reduct.append((r.head, [q for q in parts if isinstance(q, Lit)]))
        closed = set()
        changed = True
        while changed:
            changed = False
            for head, pos in reduct:
                if isinstance(head, Lit) and head not in closed and all(q in closed for q in pos):
                    closed.add(head)
                    changed = True
        if closed != m:
            continue
        if any(not isinstance(h, Lit) and all(q in m for q in pos) for h, pos in reduct):
            continue
        found.append(m)
    return sorted(found, key=lambda s: sorted(map(str, s)))


def test_fact():
    assert is_answer_set(parse_program("a."), {a}, {"a"})


def test_example_program():
    p = load("ex3_p1")
    assert is_answer_set(p, {Lit("see-stars", True), Lit("day")})
    assert family(answer_sets(p)) == ["{-see-stars, day}"]


def test_constraint_kills_candidate():
    assert not is_answer_set(parse_program("a. :- a."), {a}, {"a"})
    assert answer_sets(parse_program("a. :- a.")) == []


def test_inconsistent_candidate_is_rejected():
    with pytest.raises(ValueError):
        is_answer_set(parse_program("a."), {a, Lit("a", True)})


def test_empty_program():
    assert answer_sets(Program(()), set()) == [frozenset()]


def test_even_loop():
    assert family(answer_sets(parse_program("a :- not b. b :- not a."))) == ["{a}", "{b}"]


def test_union_of_example_programs():
    assert family(answer_sets(load("ex3_p1") + load("ex3_p2"))) == ["{-see-stars, day}"]


def test_same_answer_sets():
    p = load("ex3_p1")
    assert same_answer_sets(p, p)
    assert not same_answer_sets(parse_program("a."), parse_program("b."))
    op1 = build_op1(load("ex3_p1"), load("ex3_p2"))
    op3 = build_op3(load("ex3_p1"), load("ex3_p2"))
    base = op3.projection_signature
    assert ({frozenset(l for l in m if l.atom in base) for m in answer_sets(op1.program)}
            == set(answer_sets(op3.program)))


def test_conservative_extension():
    p = parse_program("a.")
    assert is_conservative_extension(p, p, {"a"})
    assert is_conservative_extension(p, parse_program("a. x :- a."), {"a"})
    assert not is_conservative_extension(p, parse_program("a. x. :- x."), {"a"})


def test_method_selection():
    p = parse_program("a :- not (b ; c). b :- not a.")
    assert answer_sets(p, method="search") == answer_sets(p, method="enumerate")
    with pytest.raises(ValueError):
        answer_sets(p, method="guess")


def test_format():
    assert format_literal_set({Lit("day"), Lit("see-stars", True)}) == "{-see-stars, day}"


def test_reduct_fixpoint():
    p = parse_program("a :- not b. b :- not a.")
    assert reduct_fixpoint(p, {a}) == {a}
    assert reduct_fixpoint(p, set()) == {a, b}


@settings(max_examples=200, deadline=None)
@given(elps())
def test_search_matches_reduct_oracle(p):
    sig = signature_of(p)
    assert answer_sets(p, sig, method="search") == gelfond_lifschitz(p, sig)


@settings(max_examples=120, deadline=None)
@given(elps(3))
def test_logical_check_matches_reduct_oracle(p):
    sig = signature_of(p)
    assert answer_sets(p, sig, method="enumerate") == gelfond_lifschitz(p, sig)


@settings(max_examples=120, deadline=None)
@given(augmented_programs(3))
def test_search_matches_logical_check_on_nested_bodies(p):
    sig = signature_of(p)
    assert answer_sets(p, sig, method="search") == answer_sets(p, sig, method="enumerate")


@settings(max_examples=100, deadline=None)
@given(augmented_programs(3))
def test_answer_sets_are_consistent_and_closed(p):
    sig = signature_of(p)
    lits = set(literals_over(sig))
    for m in answer_sets(p, sig):
        assert is_consistent(m) and m <= lits
        closure = list(p.rules) + [Not(l) for l in lits - m]
        assert n2_consistent([r.as_formula() if hasattr(r, "as_formula") else r for r in closure], sig)


def test_enumeration_cap(monkeypatch):
    from aspu.g3 import UniverseTooLarge
    monkeypatch.setenv("ASPU_MAX_ATOMS", "2")
    with pytest.raises(UniverseTooLarge):
        answer_sets(parse_program("a :- b ; c."), method="enumerate")
