import pytest
from hypothesis import given, settings

from aspu.answer_sets import answer_sets
from aspu.operators import (
    build, build_op1, build_op2, build_op2c, build_op3, build_op3r, fold_update, sup,
    update, update_answer_sets,
)
from aspu.syntax import (
    BOTTOM, TOP, Lit, NotELPError, Or, And, Program, parse_formula, parse_program,
    render_program, signature_of, tau_completion,
)

from conftest import FIXTURES, family, load
from strategies import elps

EX1_SET = ["{-tv-on, assignment-due, night, other, working}"]
EX3_OP1 = ["{-see-stars, day}", "{night, see-stars, see-venus}"]


def test_op1_empty():
    u = build_op1(Program(()), Program(()))
    assert u.program.rules == ()
    assert family(update_answer_sets(u)) == ["{}"]


def test_op1_newer_fact_wins():
    u = build_op1(parse_program("-a."), parse_program("a."))
    assert not any(r.is_constraint for r in u.program)
    assert family(update_answer_sets(u)) == ["{a}"]


def test_op1_shape():
    u = build_op1(parse_program("a :- b.\n:- c."), parse_program("-a."))
    text = render_program(u.program)
    assert text.splitlines()[:3] == [":- c.", "a__1 :- b, not rej__r0.", "rej__r0 :- b, -a__2."]
    assert "-a__2." in text.splitlines()
    assert {"-a__1 :- -a__2.", "-a :- -a__1.", "b__1 :- b__2.", "b :- b__1."} <= set(text.splitlines())


def test_op1_fresh_names_avoid_user_atoms():
    u = build_op1(parse_program("a. a__1 :- rej__r0."), parse_program("-a."))
    names = list(u.star.indexed.values()) + list(u.star.rej.values())
    assert len(set(names)) == len(names)
    assert not set(names) & u.star.base


def test_op1_examples():
    assert family(update("op1", load("ex3_p1"), load("ex3_p2"))) == EX3_OP1
    assert family(update("op1", load("ex5_p"), load("ex5_p1"))) == ["{-a, b}", "{a, b}"]
    assert family(update("op1", load("ex5_p"), load("ex5_p2"))) == ["{-a, b}"]


def test_op1_projection_drops_fresh_atoms():
    u = build_op1(load("ex3_p1"), load("ex3_p2"))
    for m in update_answer_sets(u):
        assert {l.atom for l in m} <= u.projection_signature


def test_op2_first_example_program():
    u = build_op2(load("ex1_p1"), load("ex1_p2"))
    lines = render_program(u.program).splitlines()
    assert lines[:4] == [
        "sleep :- night, not watch-tv, not other, not -sleep.",
        "night :- not -night.",
        "tv-on :- not tv-broke, not -tv-on.",
        "watch-tv :- tv-on, not -watch-tv.",
    ]
    assert family(update_answer_sets(u)) == EX1_SET


def test_op2_initialization_is_verbatim():
    p = load("ex1_p2")
    assert build_op2(Program(()), p).program.rules == p.rules


def test_op2_third_example():
    assert family(update("op2", load("ex3_p1"), load("ex3_p2"))) == [
        "{-see-stars, day}", "{-see-stars, night}", "{night, see-stars, see-venus}"]


def test_op2c_examples():
    assert family(update("op2c", load("ex5_p"), load("ex5_p1"))) == ["{-a, b}", "{a, b}"]
    assert family(update("op2c", load("ex5_p"), load("ex5_p2"))) == ["{-a, b}"]
    assert family(update("op2c", load("ex6_p1"), load("ex6_p2"))) == ["{-a, -c, b}", "{-c, a, b}"]


def test_op2c_guards_only_clashing_rules():
    u = build_op2c(parse_program("a. b."), parse_program("-a."))
    assert render_program(u.program) == "a :- not -a.\nb.\n-a.\n"


def test_sup():
    p2 = load("ex1_p2")
    assert sup(Lit("tv-on", True), p2) == parse_formula("power-failure ; (assignment-due, working)")
    assert sup(Lit("a"), Program(())) == BOTTOM
    assert sup(Lit("a"), parse_program("a.")) == TOP
    assert sup(Lit("a"), parse_program("a :- b. a.")) == TOP
    assert sup(Lit("a"), parse_program("a :- b. a :- c. a :- d.")) == Or(Or(Lit("b"), Lit("c")), Lit("d"))


def test_op3_matches_listed_program():
    u = build_op3(load("ex1_p1"), load("ex1_p2"))
    assert render_program(u.program) == (FIXTURES / "ex2_op3.lp").read_text()
    assert family(update_answer_sets(u)) == EX1_SET


def test_op3_examples():
    assert family(update("op3", load("ex6_p1"), load("ex6_p2"))) == ["{-a, -c, b}"]
    assert family(update("op3", load("ex3_p1"), load("ex3_p2"))) == EX3_OP1


def test_op3_with_empty_update_is_verbatim():
    p = load("ex3_p1")
    assert build_op3(p, Program(())).program.rules == p.rules


def test_op3r_examples():
    u = build_op3r(load("ex7_p"), load("ex7_p1"))
    assert u.branch_note == "rejected-tautology-free"
    assert update_answer_sets(u) == []
    assert family(update("op3r", load("ex7_p"), load("ex7_p2"))) == ["{see-stars, see-venus}"]
    u = build_op3r(load("ex8_p1"), load("ex8_p2"))
    assert u.branch_note == "union"
    assert family(update_answer_sets(u)) == ["{open-school, workday}"]
    big = update("op3r", load("ex8_p1") + load("ex8_p3"), load("ex8_p2") + load("ex8_p4"))
    assert family(big) == ["{-open-school, -see-stars, holiday}", "{-see-stars, open-school, workday}"]


def test_head_top_rules_are_dropped():
    u = build_op2(parse_program("true :- a. a."), parse_program("true."))
    assert render_program(u.program) == "a :- not -a.\n"


def test_non_elp_input_is_rejected():
    with pytest.raises(NotELPError):
        build_op1(parse_program("a :- b ; c."), Program(()))
    with pytest.raises(ValueError):
        build("op9", Program(()), Program(()))


def test_fold_update():
    u = fold_update("op3", [load("ex3_p1"), load("ex3_p2"), parse_program("cloudy.")])
    assert "cloudy" in u.projection_signature
    with pytest.raises(ValueError):
        fold_update("op3", [Program(())])


@settings(max_examples=150, deadline=None)
@given(elps(), elps())
def test_op1_equals_op3(p1, p2):
    assert update("op1", p1, p2) == update("op3", p1, p2)


@settings(max_examples=100, deadline=None)
@given(elps(3), elps(3))
def test_op1_equals_op2_on_tau_complete_updates(p1, p2):
    p2 = tau_completion(p2, signature_of(p1) | signature_of(p2))
    assert update("op1", p1, p2) == update("op2", p1, p2)


@settings(max_examples=100, deadline=None)
@given(elps(), elps())
def test_outputs_reparse(p1, p2):
    for op in ("op1", "op2", "op2c", "op3", "op3r"):
        prog = build(op, p1, p2).program
        assert parse_program(render_program(prog)).rules == prog.rules


@settings(max_examples=50, deadline=None)
@given(elps(), elps())
def test_op3_rendering_is_deterministic(p1, p2):
    assert render_program(build_op3(p1, p2).program) == render_program(build_op3(p1, p2).program)


@settings(max_examples=100, deadline=None)
@given(elps(), elps())
def test_base_operators_stay_in_the_input_alphabet(p1, p2):
    base = signature_of(p1) | signature_of(p2)
    for op in ("op2", "op2c", "op3", "op3r"):
        assert signature_of(build(op, p1, p2).program) <= base


def test_union_semantics_of_op3r_branch():
    p1, p2 = load("ex3_p1"), load("ex3_p2")
    assert update("op3r", p1, p2) == answer_sets(p1 + p2)
