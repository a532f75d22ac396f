"""N2 judgements decided in G3.

Strong negation is pushed onto atoms, every ``-a`` becomes a fresh atom
``a'`` and the coherence premise ``a' -> not a`` is added for each atom of the
joint signature.  Enumeration runs over the five coherent value pairs of
``(a, a')`` instead of all nine; the other four falsify the coherence
premise, so the result is the same as plain G3 enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .g3 import g3_countermodel, search
from .syntax import (
    TOP, BOTTOM, And, Bottom, Formula, Implies, Lit, Not, Or, Program, SNeg, Top,
    conjoin, formula_atoms,
)

PRIME = "'"
# (value of a, value of a') pairs that satisfy a' -> not a
COHERENT = ((0, 0), (1, 0), (2, 0), (0, 1), (0, 2))


def primed(atom: str) -> str:
    return atom + PRIME


def push_strong_negation(f: Formula) -> Formula:
    if isinstance(f, SNeg):
        return _negate(f.arg)
    if isinstance(f, And):
        return And(push_strong_negation(f.left), push_strong_negation(f.right))
    if isinstance(f, Or):
        return Or(push_strong_negation(f.left), push_strong_negation(f.right))
    if isinstance(f, Implies):
        return Implies(push_strong_negation(f.ante), push_strong_negation(f.cons))
    if isinstance(f, Not):
        return Not(push_strong_negation(f.arg))
    return f


def _negate(f: Formula) -> Formula:
    if isinstance(f, Lit):
        return Lit(f.atom, not f.neg)
    if isinstance(f, Implies):                      # -(a -> b) == a & -b
        return And(push_strong_negation(f.ante), _negate(f.cons))
    if isinstance(f, And):                          # -(a & b) == -a | -b
        return Or(_negate(f.left), _negate(f.right))
    if isinstance(f, Or):                           # -(a | b) == -a & -b
        return And(_negate(f.left), _negate(f.right))
    if isinstance(f, SNeg):                         # --a == a
        return push_strong_negation(f.arg)
    if isinstance(f, Not):                          # -not a == a
        return push_strong_negation(f.arg)
    if isinstance(f, Bottom):
        return TOP
    if isinstance(f, Top):
        return BOTTOM
    raise TypeError(f"not a formula: {f!r}")


def _rename(f: Formula) -> Formula:
    if isinstance(f, Lit):
        return Lit(primed(f.atom)) if f.neg else f
    if isinstance(f, And):
        return And(_rename(f.left), _rename(f.right))
    if isinstance(f, Or):
        return Or(_rename(f.left), _rename(f.right))
    if isinstance(f, Implies):
        return Implies(_rename(f.ante), _rename(f.cons))
    if isinstance(f, Not):
        return Not(_rename(f.arg))
    return f


@dataclass(frozen=True)
class Translation:
    theory: tuple[Formula, ...]     # translated premises followed by coherence premises
    extra: tuple[Formula, ...]      # translated query formulas
    atoms: tuple[str, ...]          # base atoms, sorted
    renaming: Mapping[str, str]     # base atom -> primed atom

    @property
    def universe(self) -> frozenset[str]:
        return frozenset(self.atoms) | frozenset(self.renaming.values())


def translate_to_g3(theory: Iterable[Formula], extra: Iterable[Formula] = (),
                    signature: Iterable[str] = ()) -> Translation:
    theory = [push_strong_negation(f) for f in theory]
    extra = [push_strong_negation(f) for f in extra]
    atoms = set(signature)
    for f in theory + extra:
        atoms |= formula_atoms(f)
    atoms = sorted(atoms)
    renaming = {a: primed(a) for a in atoms}
    coherence = [Implies(Lit(renaming[a]), Not(Lit(a))) for a in atoms]
    return Translation(
        theory=tuple(_rename(f) for f in theory) + tuple(coherence),
        extra=tuple(_rename(f) for f in extra),
        atoms=tuple(atoms),
        renaming=renaming,
    )


def as_formulas(theory) -> list[Formula]:
    """Accept a Program, rules or formulas."""
    if isinstance(theory, Program):
        theory = theory.rules
    out = []
    for t in theory:
        out.append(t.as_formula() if hasattr(t, "as_formula") else t)
    return out


def _groups(tr: Translation, pins: Mapping[Lit, tuple[int, ...]] | None):
    index = {}
    groups = []
    for a in tr.atoms:
        i, j = len(index), len(index) + 1
        index[a] = i
        index[tr.renaming[a]] = j
        rows = COHERENT
        if pins:
            pos = pins.get(Lit(a))
            neg = pins.get(Lit(a, True))
            rows = tuple(r for r in rows
                         if (pos is None or r[0] in pos) and (neg is None or r[1] in neg))
        groups.append(((i, j), list(rows)))
    return index, groups


def n2_search(theory, target: Formula | None = None, signature: Iterable[str] = (),
              pins: Mapping[Lit, tuple[int, ...]] | None = None, limit: int = 0):
    """Translated G3 interpretations modelling ``theory`` (and not ``target``).

    ``pins`` restricts the values a literal's G3 atom may take; it is only a
    search-space restriction, so callers must add premises that force it.
    """
    tr = translate_to_g3(as_formulas(theory), [target] if target is not None else (), signature)
    index, groups = _groups(tr, pins)
    return search(tr.theory, tr.extra[0] if tr.extra else None, index, groups, limit)


def n2_entails(theory, f: Formula, signature: Iterable[str] = ()) -> bool:
    return not n2_search(theory, f, signature, limit=1)


def n2_entails_naive(theory, f: Formula) -> bool:
    """Reference route: plain 3^n G3 enumeration of the translated sequent."""
    tr = translate_to_g3(as_formulas(theory), [f])
    return g3_countermodel(tr.theory, tr.extra[0], tr.universe) is None


def n2_consistent(theory, signature: Iterable[str] = ()) -> bool:
    return bool(n2_search(theory, None, signature, limit=1))


def n2_entails_all(theory, goals) -> bool:
    goals = as_formulas(goals)
    return n2_entails(theory, conjoin(goals)) if goals else True


def strongly_equivalent(p1: Program, p2: Program) -> bool:
    """N2 inter-derivability, which coincides with strong equivalence."""
    return n2_entails_all(p1, p2) and n2_entails_all(p2, p1)
