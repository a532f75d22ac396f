"""Goedel three-valued logic: evaluation, models, entailment.

Values are 0, 1, 2 with 2 designated.  Negation and TOP are derived
(``not p`` is ``p -> false``, TOP is ``false -> false``).
"""
from __future__ import annotations

import math
import os
from itertools import product
from typing import Iterable, Mapping

from . import kernel
from ._bytecode import compile_theory
from .syntax import And, Bottom, Formula, Implies, Lit, Not, Or, SNeg, Top, formula_atoms

Interpretation3 = Mapping[str, int]

DEFAULT_MAX_ATOMS = 14
VALUES = (0, 1, 2)


class UniverseTooLarge(ValueError):
    """The enumeration would exceed 3**cap interpretations."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"enumeration over {size} atoms exceeds the cap of {cap} "
                         "(set ASPU_MAX_ATOMS to raise it)")
        self.size = size
        self.cap = cap


def max_atoms(default: int = DEFAULT_MAX_ATOMS) -> int:
    env = os.environ.get("ASPU_MAX_ATOMS")
    return int(env) if env else default


def imp(a: int, b: int) -> int:
    return 2 if a <= b else b


def eval_formula(i: Interpretation3, f: Formula) -> int:
    if isinstance(f, Lit):
        if f.neg:
            raise ValueError(f"strong negation leaf {f}: translate to G3 first")
        try:
            return i[f.atom]
        except KeyError:
            raise KeyError(f"atom {f.atom!r} not in the interpretation") from None
    if isinstance(f, And):
        return min(eval_formula(i, f.left), eval_formula(i, f.right))
    if isinstance(f, Or):
        return max(eval_formula(i, f.left), eval_formula(i, f.right))
    if isinstance(f, Implies):
        return imp(eval_formula(i, f.ante), eval_formula(i, f.cons))
    if isinstance(f, Not):
        return imp(eval_formula(i, f.arg), 0)
    if isinstance(f, Bottom):
        return 0
    if isinstance(f, Top):
        return imp(0, 0)
    if isinstance(f, SNeg):
        raise ValueError("strong negation on a compound formula: translate to G3 first")
    raise TypeError(f"not a formula: {f!r}")


def is_model(i: Interpretation3, theory: Iterable[Formula]) -> bool:
    return all(eval_formula(i, f) == 2 for f in theory)


def _universe(theory, extra, universe) -> list[str]:
    atoms = set()
    for f in list(theory) + list(extra):
        atoms |= formula_atoms(f)
    if universe is None:
        return sorted(atoms)
    missing = atoms - set(universe)
    if missing:
        raise KeyError(f"atoms {sorted(missing)} not in the universe")
    return sorted(universe)


def search(theory, target, index: dict[str, int], groups, limit: int = 0):
    """Run the kernel; see ``_kernel_py.find_models`` for ``groups``."""
    size = 1
    for _, rows in groups:
        size *= len(rows)
    cap = max_atoms()
    if size > 3 ** cap:
        raise UniverseTooLarge(math.ceil(math.log(size, 3)), cap)
    return kernel.find_models(compile_theory(theory, target, index), groups, limit)


def g3_models(theory: Iterable[Formula], universe: Iterable[str] | None = None) -> list[dict[str, int]]:
    """All models over ``universe``, in lexicographic order of (sorted atom) values."""
    theory = list(theory)
    atoms = _universe(theory, (), universe)
    index = {a: k for k, a in enumerate(atoms)}
    groups = [((k,), [(v,) for v in VALUES]) for k in range(len(atoms))]
    return [dict(zip(atoms, vals)) for vals in search(theory, None, index, groups)]


def g3_countermodel(theory: Iterable[Formula], f: Formula,
                    universe: Iterable[str] | None = None) -> dict[str, int] | None:
    theory = list(theory)
    atoms = _universe(theory, (f,), universe)
    index = {a: k for k, a in enumerate(atoms)}
    groups = [((k,), [(v,) for v in VALUES]) for k in range(len(atoms))]
    found = search(theory, f, index, groups, limit=1)
    return dict(zip(atoms, found[0])) if found else None


def g3_entails(theory: Iterable[Formula], f: Formula, universe: Iterable[str] | None = None) -> bool:
    return g3_countermodel(theory, f, universe) is None


def naive_models(theory: Iterable[Formula], universe: Iterable[str]) -> list[dict[str, int]]:
    """Reference enumeration with the recursive evaluator (no kernel)."""
    theory = list(theory)
    atoms = sorted(universe)
    out = []
    for vals in product(VALUES, repeat=len(atoms)):
        i = dict(zip(atoms, vals))
        if is_model(i, theory):
            out.append(i)
    return out
