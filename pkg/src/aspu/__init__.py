"""Answer sets of extended programs via G3, and causal-rejection update operators."""
from .answer_sets import answer_sets, is_answer_set, is_conservative_extension, same_answer_sets
from .kernel import IMPLEMENTATION
from .n2 import n2_consistent, n2_entails, strongly_equivalent
from .operators import (
    OPERATORS, UpdateResult, build, build_op1, build_op2, build_op2c, build_op3, build_op3r,
    sup, update, update_answer_sets,
)
from .rejection import rej_prime, update_answer_sets_rej
from .syntax import (
    Lit, ParseError, Program, Rule, parse_formula, parse_program, parse_rule, render_program,
    signature_of,
)

__all__ = [
    "IMPLEMENTATION", "Lit", "OPERATORS", "ParseError", "Program", "Rule", "UpdateResult",
    "answer_sets", "build", "build_op1", "build_op2", "build_op2c", "build_op3", "build_op3r",
    "is_answer_set", "is_conservative_extension", "n2_consistent", "n2_entails",
    "parse_formula", "parse_program", "parse_rule", "rej_prime", "render_program",
    "same_answer_sets", "signature_of", "strongly_equivalent", "sup", "update",
    "update_answer_sets", "update_answer_sets_rej",
]
