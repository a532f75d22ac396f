"""Flat postfix encoding of G3 formulas shared by both kernels.

Each instruction is a pair ``(op, arg)``.  Negation is compiled as
``arg -> false`` and TOP as the constant 2, so the kernels only know
constants, atoms, min, max and the Goedel implication.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass

from .syntax import And, Bottom, Formula, Implies, Lit, Not, Or, SNeg, Top

OP_CONST = 0
OP_ATOM = 1
OP_AND = 2
OP_OR = 3
OP_IMP = 4


@dataclass(frozen=True)
class Compiled:
    code: array           # int32 pairs (op, arg)
    starts: array         # int32, len = n_formulas + 1, offsets in pairs
    n_theory: int         # formulas [0, n_theory) must all be designated
    has_target: bool      # formula n_theory, if present, is the query
    stack_size: int
    n_atoms: int


def _emit(f: Formula, index: dict[str, int], out: list[int]) -> int:
    """Append postfix code for ``f``; return the stack depth it needs."""
    if isinstance(f, Lit):
        if f.neg:
            raise ValueError(f"strong negation leaf {f} reached the G3 compiler")
        out += (OP_ATOM, index[f.atom])
        return 1
    if isinstance(f, Top):
        out += (OP_CONST, 2)
        return 1
    if isinstance(f, Bottom):
        out += (OP_CONST, 0)
        return 1
    if isinstance(f, Not):
        d = _emit(f.arg, index, out)
        out += (OP_CONST, 0, OP_IMP, 0)
        return max(d, 2)
    if isinstance(f, (And, Or, Implies)):
        a, b = (f.ante, f.cons) if isinstance(f, Implies) else (f.left, f.right)
        da = _emit(a, index, out)
        db = _emit(b, index, out)
        op = OP_AND if isinstance(f, And) else OP_OR if isinstance(f, Or) else OP_IMP
        out += (op, 0)
        return max(da, db + 1)
    if isinstance(f, SNeg):
        raise ValueError("strong negation on a compound formula; push it down first")
    raise TypeError(f"not a formula: {f!r}")


def compile_theory(theory, target: Formula | None, index: dict[str, int]) -> Compiled:
    code: list[int] = []
    starts = [0]
    depth = 1
    formulas = list(theory) + ([target] if target is not None else [])
    for f in formulas:
        depth = max(depth, _emit(f, index, code))
        starts.append(len(code) // 2)
    return Compiled(
        code=array("i", code),
        starts=array("i", starts),
        n_theory=len(formulas) - (target is not None),
        has_target=target is not None,
        stack_size=depth,
        n_atoms=len(index),
    )
