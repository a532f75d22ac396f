"""Answer sets of augmented programs.

``is_answer_set`` is the logical characterisation: ``M`` is an answer set of
``P`` over signature ``A`` iff ``P + {not l : l not in M} + {not not l : l in M}``
is N2-consistent and N2-entails every literal of ``M``.

``answer_sets`` finds the candidates with a propagate-and-branch search over
literal bounds and confirms each leaf with the reduct fixpoint, which is the
same condition read through the here/there reading of G3 (value 2 = here,
value >= 1 = there).  Programs whose heads are not literals fall back to
exhaustive enumeration with ``is_answer_set``.
"""
from __future__ import annotations

import os
from itertools import product
from typing import Iterable

from .g3 import UniverseTooLarge
from .n2 import n2_search
from .syntax import (
    And, Bottom, Formula, Implies, Lit, Not, Or, Program, Rule, SNeg, Top,
    complement_literal, conjoin, formula_literals, literals_over, signature_of,
)

LiteralSet = frozenset  # frozenset[Lit]

DEFAULT_ENUM_ATOMS = 8


def enumeration_cap() -> int:
    env = os.environ.get("ASPU_MAX_ATOMS")
    return int(env) if env else DEFAULT_ENUM_ATOMS


def is_consistent(m: Iterable[Lit]) -> bool:
    m = set(m)
    return not any(complement_literal(l) in m for l in m)


def answer_set_key(m: Iterable[Lit]) -> tuple[str, ...]:
    return tuple(sorted(str(l) for l in m))


def sort_answer_sets(sets: Iterable[Iterable[Lit]]) -> list[frozenset]:
    return sorted({frozenset(s) for s in sets}, key=answer_set_key)


def format_literal_set(m: Iterable[Lit]) -> str:
    return "{" + ", ".join(answer_set_key(m)) + "}"


def project(m: Iterable[Lit], atoms: Iterable[str]) -> frozenset:
    atoms = set(atoms)
    return frozenset(l for l in m if l.atom in atoms)


# ---------------------------------------------------------------- the logical check

def is_answer_set(p: Program, m: Iterable[Lit], sig: Iterable[str] | None = None) -> bool:
    m = frozenset(m)
    if not is_consistent(m):
        raise ValueError(f"{format_literal_set(m)} is not a consistent set of literals")
    sig = set(signature_of(p)) if sig is None else set(sig)
    sig |= {l.atom for l in m}
    lits = literals_over(sig)
    theory = [r.as_formula() for r in p.rules]
    theory += [Not(l) for l in lits if l not in m]
    theory += [Not(Not(l)) for l in sorted(m)]
    # the premises above force these values; the pins only prune the search
    pins = {l: ((1, 2) if l in m else (0,)) for l in lits}
    if not n2_search(theory, None, sig, pins, limit=1):
        return False
    return not n2_search(theory, conjoin(sorted(m)), sig, pins, limit=1)


# ---------------------------------------------------------------- search

def _kleene(f: Formula, lo: frozenset, hi: frozenset):
    """Classical value of ``f`` in every M with lo <= M <= hi, or None."""
    if isinstance(f, Lit):
        if f in lo:
            return True
        if f not in hi:
            return False
        return None
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        v = _kleene(f.arg, lo, hi)
        return None if v is None else not v
    if isinstance(f, And):
        a = _kleene(f.left, lo, hi)
        if a is False:
            return False
        b = _kleene(f.right, lo, hi)
        if b is False:
            return False
        return True if a and b else None
    if isinstance(f, Or):
        a = _kleene(f.left, lo, hi)
        if a is True:
            return True
        b = _kleene(f.right, lo, hi)
        if b is True:
            return True
        return False if a is False and b is False else None
    raise TypeError(f"unsupported body formula {f!r}")


def _reduct_holds(f: Formula, x: set, negation) -> bool:
    """Body truth with positive literals read from ``x`` and ``not g`` from ``negation(g)``."""
    if isinstance(f, Lit):
        return f in x
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return negation(f.arg)
    if isinstance(f, And):
        return _reduct_holds(f.left, x, negation) and _reduct_holds(f.right, x, negation)
    if isinstance(f, Or):
        return _reduct_holds(f.left, x, negation) or _reduct_holds(f.right, x, negation)
    raise TypeError(f"unsupported body formula {f!r}")


def _lfp(rules, negation, allowed=None) -> set:
    x: set = set()
    changed = True
    while changed:
        changed = False
        for head, body in rules:
            if head in x or (allowed is not None and head not in allowed):
                continue
            if _reduct_holds(body, x, negation):
                x.add(head)
                changed = True
    return x


def reduct_fixpoint(p: Program, m: Iterable[Lit]) -> frozenset:
    """Least set closed under ``p`` with every ``not g`` read classically in ``m``."""
    m = frozenset(m)
    rules = [(r.head, r.body) for r in p.rules if isinstance(r.head, Lit)]
    return frozenset(_lfp(rules, lambda g: not _kleene(g, m, m)))


def _literal_heads_only(p: Program) -> bool:
    return all(isinstance(r.head, (Lit, Top, Bottom)) for r in p.rules) and not any(
        isinstance(g, (Implies, SNeg)) for r in p.rules for g in _subformulas(r.body))


def _subformulas(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (And, Or)):
            stack += [g.left, g.right]
        elif isinstance(g, Implies):
            stack += [g.ante, g.cons]
        elif isinstance(g, (Not, SNeg)):
            stack.append(g.arg)


class _Search:
    def __init__(self, p: Program):
        self.rules = [(r.head, r.body) for r in p.rules if isinstance(r.head, Lit)]
        self.constraints = [r.body for r in p.rules if isinstance(r.head, Bottom)]
        self.found: list[frozenset] = []

    def propagate(self, lo: frozenset, hi: frozenset):
        while True:
            if not lo <= hi or not is_consistent(lo):
                return None
            if any(_kleene(c, lo, hi) is True for c in self.constraints):
                return None
            # a consistent M never holds both l and -l
            hi = hi - {complement_literal(l) for l in lo}
            if not lo <= hi:
                return None
            low = _lfp(self.rules, lambda g: _kleene(g, lo, hi) is False)
            up = _lfp(self.rules, lambda g: _kleene(g, lo, hi) is not True, allowed=hi)
            new_lo = lo | low
            new_hi = hi & up
            if new_lo == lo and new_hi == hi:
                return lo, hi
            lo, hi = frozenset(new_lo), frozenset(new_hi)

    def run(self, lo: frozenset, hi: frozenset):
        state = self.propagate(lo, hi)
        if state is None:
            return
        lo, hi = state
        if lo == hi:
            self.check(lo)
            return
        pick = min(hi - lo, key=str)
        self.run(lo | {pick}, hi)
        self.run(lo, hi - {pick})

    def check(self, m: frozenset):
        if not is_consistent(m):
            return
        if any(_kleene(c, m, m) for c in self.constraints):
            return
        if frozenset(_lfp(self.rules, lambda g: not _kleene(g, m, m))) == m:
            self.found.append(m)


def _search_answer_sets(p: Program) -> list[frozenset]:
    s = _Search(p)
    heads = frozenset(h for h, _ in s.rules)
    s.run(frozenset(), heads)
    return s.found


def _enumerate_answer_sets(p: Program, sig: set[str]) -> list[frozenset]:
    cap = enumeration_cap()
    if len(sig) > cap:
        raise UniverseTooLarge(len(sig), cap)
    atoms = sorted(sig)
    found = []
    # each atom: absent, positive, strongly negated
    for choice in product((0, 1, 2), repeat=len(atoms)):
        m = frozenset(Lit(a, c == 2) for a, c in zip(atoms, choice) if c)
        if is_answer_set(p, m, sig):
            found.append(m)
    return found


def answer_sets(p: Program, sig: Iterable[str] | None = None, method: str = "auto") -> list[frozenset]:
    """All answer sets of ``p``, canonically sorted.

    ``method`` is ``"search"`` (literal heads only), ``"enumerate"`` (every
    consistent subset of the literals, checked with :func:`is_answer_set`)
    or ``"auto"``.
    """
    sig = set(signature_of(p)) if sig is None else set(sig) | set(signature_of(p))
    if method == "auto":
        method = "search" if _literal_heads_only(p) else "enumerate"
    if method == "search":
        if not _literal_heads_only(p):
            raise ValueError("search needs literal heads and bodies over and/or/not")
        found = _search_answer_sets(p)
    elif method == "enumerate":
        found = _enumerate_answer_sets(p, sig)
    else:
        raise ValueError(f"unknown method {method!r}")
    return sort_answer_sets(found)


def same_answer_sets(p1: Program, p2: Program) -> bool:
    sig = set(signature_of(p1)) | set(signature_of(p2))
    return answer_sets(p1, sig) == answer_sets(p2, sig)


def is_conservative_extension(p: Program, p_big: Program, sig: Iterable[str] | None = None) -> bool:
    sig = set(signature_of(p)) if sig is None else set(sig)
    small = set(answer_sets(p, sig))
    big = {project(m, sig) for m in answer_sets(p_big)}
    return small == big
