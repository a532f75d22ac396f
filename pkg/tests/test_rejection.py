import pytest
from hypothesis import given, settings

from aspu.answer_sets import answer_sets
from aspu.n2 import n2_entails, n2_entails_all
from aspu.operators import update
from aspu.rejection import closure_bar, conflicting, rej_prime, update_answer_sets_rej
from aspu.syntax import And, Lit, Not, Program, Rule, is_tau_free, parse_program, parse_rule

from conftest import family, load
from strategies import elps, elp_rules

a, b = Lit("a"), Lit("b")
na, nb = Lit("a", True), Lit("b", True)


def test_conflicting():
    assert conflicting(parse_rule("a :- b."), parse_rule("-a :- c."))
    assert not conflicting(parse_rule("a :- b."), parse_rule("a :- c."))
    assert conflicting(parse_rule("see-stars :- night, not cloudy."), parse_rule("-see-stars."))
    with pytest.raises(ValueError):
        conflicting(parse_rule(":- a."), parse_rule("a."))


def test_closure_bar():
    assert set(closure_bar(set(), {"a"})) == {Not(a), Not(na)}
    assert set(closure_bar({a}, {"a"})) == {a, Not(na)}
    assert set(closure_bar({na}, {"a", "b"})) == {na, Not(a), Not(b), Not(nb)}


def test_rejection_examples():
    p1, p2 = load("ex3_p1"), load("ex3_p2")
    assert rej_prime({a}, p1, Program(())) == frozenset()
    s = {Lit("see-stars"), Lit("see-venus"), Lit("night")}
    assert rej_prime(s, p1, p2) == {3}
    assert p1.rules[3] == parse_rule("-see-stars.")
    assert rej_prime({Lit("see-stars", True), Lit("day")}, p1, p2) == frozenset()


def test_oracle_examples():
    p = load("ex3_p2")
    assert update_answer_sets_rej(Program(()), p) == answer_sets(p)
    assert family(update_answer_sets_rej(load("ex3_p1"), load("ex3_p2"))) == [
        "{-see-stars, day}", "{night, see-stars, see-venus}"]
    assert family(update_answer_sets_rej(load("ex5_p"), load("ex5_p2"))) == ["{-a, b}"]


@settings(max_examples=150, deadline=None)
@given(elps(), elps())
def test_fast_path_equals_entailment(p1, p2):
    for s in ({a}, {na, b}, set(), {a, b, Lit("c", True)}):
        assert rej_prime(s, p1, p2, fast=True) == rej_prime(s, p1, p2, fast=False)


@settings(max_examples=100, deadline=None)
@given(elps(3), elps(3))
def test_oracle_equals_update_programs(p1, p2):
    oracle = update_answer_sets_rej(p1, p2)
    assert oracle == update("op1", p1, p2) == update("op3", p1, p2)


@settings(max_examples=100, deadline=None)
@given(elps(), elps(), elp_rules)
def test_rejection_grows_with_a_firing_conflict(p1, p2, extra):
    s = {a, Lit("c", True)}
    for k, r in enumerate(p1.rules):
        if not isinstance(r.head, Lit):
            continue
        before = rej_prime(s, p1, p2)
        conflict = Rule(Lit(r.head.atom, not r.head.neg), extra.body)
        after = rej_prime(s, p1, p2 + Program((conflict,)))
        assert before <= after
        if n2_entails(closure_bar(s, {"a", "b", "c"}), And(r.body, extra.body)):
            assert k in after


@settings(max_examples=60, deadline=None)
@given(elps(3), elps(3), elps(2))
def test_tau_free_consequences_do_not_change_updates(p1, p2, r):
    if is_tau_free(r) and n2_entails_all(p2, r):
        assert update_answer_sets_rej(p1, p2) == update_answer_sets_rej(p1, p2 + r)
