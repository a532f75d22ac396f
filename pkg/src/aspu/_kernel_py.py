"""Pure-Python G3 enumeration kernel (fallback for ``_kernel``)."""
from __future__ import annotations

from itertools import product

from ._bytecode import OP_AND, OP_ATOM, OP_CONST, OP_IMP, OP_OR, Compiled

IMPLEMENTATION = "python"


def _imp(a, b):
    return 2 if a <= b else b


def _to_source(code, lo: int, hi: int) -> str:
    stack = []
    for k in range(lo, hi):
        op, arg = code[2 * k], code[2 * k + 1]
        if op == OP_CONST:
            stack.append(str(arg))
        elif op == OP_ATOM:
            stack.append(f"v[{arg}]")
        else:
            b = stack.pop()
            a = stack.pop()
            fn = {OP_AND: "min", OP_OR: "max", OP_IMP: "_imp"}[op]
            stack.append(f"{fn}({a}, {b})")
    return stack[0]


def _functions(c: Compiled):
    srcs = [_to_source(c.code, c.starts[k], c.starts[k + 1]) for k in range(len(c.starts) - 1)]
    ns = {"_imp": _imp}
    fns = [eval("lambda v: " + s, ns) for s in srcs]
    if c.has_target:
        return fns[:-1], fns[-1]
    return fns, None


def find_models(c: Compiled, groups, limit: int = 0) -> list[tuple[int, ...]]:
    """Enumerate assignments in the product of ``groups``.

    ``groups`` is a list of ``(atom_indices, rows)``; every row gives values
    for those atoms.  An assignment is reported when every theory formula
    evaluates to 2 and, if a target was compiled, the target does not.
    ``limit <= 0`` means report all.
    """
    theory, target = _functions(c)
    found = []
    v = [0] * c.n_atoms
    idx_lists = [g[0] for g in groups]
    for combo in product(*(g[1] for g in groups)):
        for idx, row in zip(idx_lists, combo):
            for i, val in zip(idx, row):
                v[i] = val
        if all(f(v) == 2 for f in theory) and (target is None or target(v) != 2):
            found.append(tuple(v))
            if 0 < limit <= len(found):
                break
    return found
