"""Rejection-set semantics for a pair of extended programs.

A rule ``r`` of ``p1`` is rejected at ``S`` when some rule of ``p2`` has the
complementary head and the closure ``S-bar`` derives both bodies.  ``S`` is an
update answer set when it is an answer set of the surviving ``p1`` rules plus
``p2``.  Candidates are checked with :func:`is_answer_set`, so this module
shares no code path with the update-program constructions or the search.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable

from .answer_sets import enumeration_cap, is_answer_set, sort_answer_sets
from .g3 import UniverseTooLarge
from .n2 import n2_entails
from .syntax import (
    And, Formula, Lit, Not, Program, Rule, Top, body_conjuncts, check_elp,
    complement_literal, literals_over, signature_of,
)


def conflicting(r1: Rule, r2: Rule) -> bool:
    if not (isinstance(r1.head, Lit) and isinstance(r2.head, Lit)):
        raise ValueError("conflict is only defined between rules with literal heads")
    return r1.head == complement_literal(r2.head)


def closure_bar(s: Iterable[Lit], sig: Iterable[str]) -> list[Formula]:
    s = frozenset(s)
    return sorted(s) + [Not(l) for l in literals_over(set(sig) | {l.atom for l in s}) if l not in s]


def _derived_by_closure(body: Formula, s: frozenset) -> bool:
    # S-bar fixes every literal, so a conjunction of (negated) literals is
    # derivable exactly when each conjunct agrees with S
    for c in body_conjuncts(body):
        if isinstance(c, Top):
            continue
        if isinstance(c, Lit):
            if c not in s:
                return False
        elif isinstance(c, Not) and isinstance(c.arg, Lit):
            if c.arg in s:
                return False
        else:
            raise ValueError(f"not an extended-program body: {c!r}")
    return True


def rej_prime(s: Iterable[Lit], p1: Program, p2: Program, fast: bool = True) -> frozenset[int]:
    """Positions of the ``p1`` rules rejected at ``s``."""
    s = frozenset(s)
    sig = signature_of(p1) | signature_of(p2)
    closure = None if fast else closure_bar(s, sig)
    rejected = set()
    for k, r in enumerate(p1.rules):
        if not isinstance(r.head, Lit):
            continue
        for r2 in p2.rules:
            if not isinstance(r2.head, Lit) or not conflicting(r, r2):
                continue
            if fast:
                hit = _derived_by_closure(r.body, s) and _derived_by_closure(r2.body, s)
            else:
                hit = n2_entails(closure, And(r.body, r2.body), sig)
            if hit:
                rejected.add(k)
                break
    return frozenset(rejected)


def surviving_program(s: Iterable[Lit], p1: Program, p2: Program) -> Program:
    rejected = rej_prime(s, p1, p2)
    kept = tuple(r for k, r in enumerate(p1.rules) if k not in rejected)
    return Program(kept, signature_of(p1)) + p2


def update_answer_sets_rej(p1: Program, p2: Program) -> list[frozenset]:
    check_elp(p1, "p1")
    check_elp(p2, "p2")
    sig = sorted(signature_of(p1) | signature_of(p2))
    cap = enumeration_cap()
    if len(sig) > cap:
        raise UniverseTooLarge(len(sig), cap)
    found = []
    for choice in product((0, 1, 2), repeat=len(sig)):
        s = frozenset(Lit(a, c == 2) for a, c in zip(sig, choice) if c)
        if is_answer_set(surviving_program(s, p1, p2), s, sig):
            found.append(s)
    return sort_answer_sets(found)
