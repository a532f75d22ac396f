"""End-to-end acceptance checks, one test per criterion.

Each test records ``criterion`` and ``detail`` user properties; the terminal
summary in conftest prints one PASS/FAIL line per criterion.
"""
import random
import time

import pytest

from aspu.answer_sets import answer_sets
from aspu.g3 import g3_entails
from aspu.harness import HOLDS, NA, SUITES, GeneratorConfig, check_bk, run_check
from aspu.n2 import strongly_equivalent, translate_to_g3
from aspu.operators import update
from aspu.syntax import Implies, Lit, Not, Or, is_tau_free, parse_program

from conftest import family, load
from test_cli import fx, run

FUZZ = GeneratorConfig(seed=20240601, atoms=5, rules_max=6)
CASES = 200


@pytest.fixture
def criterion(record_property, request):
    n = request.node.get_closest_marker("criterion").args[0]
    record_property("criterion", n)
    return lambda detail: record_property("detail", detail)


def cases(suite, cfg=FUZZ, n=CASES):
    for i in range(n):
        yield from SUITES[suite](random.Random(f"{cfg.seed}:{suite}:{i}"), cfg)


def tally(suite, cfg=FUZZ, n=CASES, keep=lambda prop, inputs: True):
    """Run a suite; return (holds, fails, n/a) counts and the failing verdicts."""
    counts = {HOLDS: 0, "fails": 0, NA: 0}
    failing = []
    for prop, op, inputs in cases(suite, cfg, n):
        if not keep(prop, inputs):
            continue
        v = run_check(prop, op, inputs)
        counts[v.status] += 1
        if v.status == "fails":
            failing.append(v)
    return counts, failing


@pytest.mark.criterion(1)
def test_homework_update_has_the_single_expected_set(criterion):
    expected = "{-tv-on, assignment-due, night, other, working}\n"
    for op in ("op2", "op3"):
        t = time.perf_counter()
        code, out = run("update", "--operator", op, "--format", "records", fx("ex1_p1"), fx("ex1_p2"))
        took = time.perf_counter() - t
        assert (code, out) == (0, expected)
        assert took < 1.0
    criterion(f"op2, op3 -> {expected.strip()}")


@pytest.mark.criterion(2)
def test_stargazing_update_families(criterion):
    p1, p2 = load("ex3_p1"), load("ex3_p2")
    causal = ["{-see-stars, day}", "{night, see-stars, see-venus}"]
    assert family(update("op2", p1, p2)) == ["{-see-stars, day}", "{-see-stars, night}",
                                             "{night, see-stars, see-venus}"]
    for op in ("op1", "op3", "rej-oracle"):
        assert family(update(op, p1, p2)) == causal
    assert family(answer_sets(p1 + p2)) == ["{-see-stars, day}"]
    criterion("op2 three sets; op1 = op3 = rej-oracle two sets; union one set")


@pytest.mark.criterion(3)
def test_strongly_equivalent_updates_diverge_for_op1_and_op2c(criterion):
    p, q1, q2 = load("ex5_p"), load("ex5_p1"), load("ex5_p2")
    assert strongly_equivalent(q1, q2)
    for op in ("op1", "op2c"):
        assert family(update(op, p, q1)) == ["{-a, b}", "{a, b}"]
        assert family(update(op, p, q2)) == ["{-a, b}"]
        v = check_bk("bk6", op, {"p": p, "p1": q1, "p2": q2})
        assert v.status == "fails"
        assert v.witness["left"] == ["{-a, b}", "{a, b}"] and v.witness["right"] == ["{-a, b}"]
    criterion("N2-equivalent; op1, op2c give 2 vs 1 sets; bk6 witness recorded")


@pytest.mark.criterion(4)
def test_clash_guarding_versus_support_guarding(criterion):
    p1, p2 = load("ex6_p1"), load("ex6_p2")
    assert family(update("op2c", p1, p2)) == ["{-a, -c, b}", "{-c, a, b}"]
    assert family(update("op3", p1, p2)) == ["{-a, -c, b}"]
    criterion("op2c two sets, op3 one set")


@pytest.mark.criterion(5)
def test_refined_operator_examples(criterion):
    p = load("ex7_p")
    assert update("op3r", p, load("ex7_p1")) == []
    assert family(update("op3r", p, load("ex7_p2"))) == ["{see-stars, see-venus}"]
    e1, e2, e3, e4 = (load(f"ex8_p{k}") for k in range(1, 5))
    assert family(update("op3r", e1, e2)) == ["{open-school, workday}"]
    assert family(update("op3r", e1 + e3, e2 + e4)) == [
        "{-open-school, -see-stars, holiday}",
        "{-see-stars, open-school, workday}",
    ]
    criterion("no sets; {see-stars, see-venus}; {open-school, workday}; two combined sets")


@pytest.mark.criterion(6)
def test_op1_equals_op3_on_random_pairs(criterion):
    t = time.perf_counter()
    counts, failing = tally("op1-vs-op3")
    took = time.perf_counter() - t
    assert failing == [] and counts[HOLDS] == CASES
    assert took <= 300
    criterion(f"{counts[HOLDS]}/{CASES} agree in {took:.1f}s")


@pytest.mark.criterion(7)
def test_op1_equals_op2_with_tau_completed_update(criterion):
    counts, failing = tally("op1-vs-op2-taucomp")
    assert failing == [] and counts[HOLDS] == CASES
    criterion(f"{counts[HOLDS]}/{CASES} agree")


@pytest.mark.criterion(8)
def test_rejection_oracle_equals_op1(criterion):
    counts, failing = tally("oracle-vs-op1")
    assert failing == [] and counts[HOLDS] == CASES
    criterion(f"{counts[HOLDS]}/{CASES} agree")


@pytest.mark.criterion(9)
def test_base_principles_for_support_operators(criterion):
    def tau_free_bk6(prop, inputs):
        return prop != "bk6" or (is_tau_free(inputs["p1"]) and is_tau_free(inputs["p2"]))

    op3, op3_fail = tally("op3-principles", keep=tau_free_bk6)
    op3r, op3r_fail = tally("op3r-principles")
    assert op3_fail == [] and op3r_fail == []
    tau_free = sum(1 for prop, _, inputs in cases("op3-principles") if prop == "bk6" and tau_free_bk6(prop, inputs))
    assert tau_free > 0
    criterion(f"op3 {op3[HOLDS]} hold ({tau_free} tau-free bk6 pairs), "
              f"op3r {op3r[HOLDS]} hold, {op3[NA] + op3r[NA]} n/a, 0 fail")


@pytest.mark.criterion(10)
def test_bk0_and_bk6_verdict_patterns_agree(criterion):
    counts, failing = tally("bk0-vs-bk6")
    assert failing == []
    assert counts[HOLDS] > 0
    criterion(f"{counts[HOLDS]} consistent verdict pairs over {CASES} cases x 5 operators, "
              f"{counts[NA]} n/a")


@pytest.mark.criterion(11)
def test_definition_completion_preserves_answer_sets(criterion):
    cfg = GeneratorConfig(seed=FUZZ.seed, atoms=3, rules_max=6)
    summary = []
    for suite in ("completion", "scope-completion"):
        counts, failing = tally(suite, cfg)
        assert counts[HOLDS] + counts["fails"] >= CASES, "too few cases meet the preconditions"
        assert failing == []
        summary.append(f"{suite} {counts[HOLDS]} agree")
    criterion(", ".join(summary))


@pytest.mark.criterion(12)
def test_g3_backend_sanity(criterion):
    a, b = Lit("a"), Lit("b")
    valid = [Or(Or(a, Implies(a, b)), Not(b)), Implies(Lit("a", True), Not(a))]
    invalid = [Or(a, Not(a)), Implies(Implies(Implies(a, b), a), a)]
    slowest = 0.0
    for f, expected in [(f, True) for f in valid] + [(f, False) for f in invalid]:
        tr = translate_to_g3([], [f])
        t = time.perf_counter()
        decided = g3_entails(tr.theory, tr.extra[0], tr.universe)
        took = time.perf_counter() - t
        slowest = max(slowest, took)
        assert decided is expected
        assert took < 0.010
    criterion(f"2 valid, 2 refuted; slowest {slowest * 1000:.2f} ms")
