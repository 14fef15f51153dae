"""Derived algebras and bounded search for term solutions of identity systems.

A term assignment sends each k-ary operation symbol to a term over x1..xk;
it defines derived operations on a free algebra.  The solver enumerates
assignments for unknown symbols up to a node-count bound and keeps those under
which every equation holds in the base variety.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Mapping, Sequence

from .terms import (DEFAULT_CAP, App, CapExceeded, Signature, Term, TermError,
                    UnknownOperation, Var, app, check_term, enumerate_terms,
                    render, size, sort_key, substitute, var, variables)
from .varieties import NormalForm, Variety, identity_holds, normalize

log = logging.getLogger(__name__)

TermAssignment = dict[str, Term]


class StrayVariable(TermError):
    pass


def render_assignment(a: Mapping[str, Term]) -> dict[str, str]:
    return {op: render(t) for op, t in a.items()}


def expand(t: Term, assignment: Mapping[str, Term]) -> Term:
    """Replace every assigned symbol by its defining term, innermost first."""
    if isinstance(t, Var) or not t.args and t.op not in assignment:
        return t
    args = tuple(expand(a, assignment) for a in t.args)
    if t.op in assignment:
        return substitute(assignment[t.op], {i + 1: a for i, a in enumerate(args)})
    return App(t.op, args)


def validate_assignment(sig: Signature, a: Mapping[str, Term], base: Signature,
                        total: bool = True) -> None:
    for op in a:
        sig.arity(op)
    if total:
        missing = [op for op in sig.names if op not in a]
        if missing:
            raise TermError(f"no term assigned to {missing}")
    for op, t in a.items():
        check_term(t, base)
        k = sig.arity(op)
        stray = sorted(i for i in variables(t) if i > k)
        if stray:
            raise StrayVariable(f"term {render(t)} for {op}/{k} uses x{stray[0]}")


@dataclass(frozen=True)
class DerivedAlgebra:
    base: Variety
    assignment: TermAssignment

    def apply(self, op: str, args: Sequence[NormalForm]) -> NormalForm:
        return derived_apply(self, op, args)


def build_derived_algebra(v: Variety, a: Mapping[str, Term]) -> DerivedAlgebra:
    validate_assignment(v.signature, a, v.signature)
    return DerivedAlgebra(v, dict(a))


def derived_apply(d: DerivedAlgebra, op: str, args: Sequence[NormalForm]) -> NormalForm:
    k = d.base.signature.arity(op)
    if len(args) != k:
        raise TermError(f"{op} expects {k} arguments, got {len(args)}")
    t = substitute(d.assignment[op], {i + 1: a.to_term() for i, a in enumerate(args)})
    return normalize(t, d.base)


def satisfies(d: DerivedAlgebra, identities: Sequence[tuple[Term, Term]]) -> bool:
    return all(identity_holds(expand(l, d.assignment), expand(r, d.assignment), d.base)
               for l, r in identities)


def identity_assignment(v: Variety) -> TermAssignment:
    return {op: app(op, *(var(i) for i in range(1, k + 1))) for op, k in v.signature.operations}


def expressible(base: Variety, ops: Signature, assignment: Mapping[str, Term],
                target: str, max_size: int, cap: int = DEFAULT_CAP) -> Term | None:
    """Smallest term over ``ops`` whose expansion equals ``target(x1..xk)``
    in ``base``, or None if there is none within ``max_size``."""
    k = base.signature.arity(target)
    goal = normalize(app(target, *(var(i) for i in range(1, k + 1))), base)
    for t in enumerate_terms(ops, range(1, k + 1), max_size, cap):
        if normalize(expand(t, assignment), base) == goal:
            return t
    return None


def check_mutual_derivability(v: Variety, a: Mapping[str, Term], max_size: int,
                              cap: int = DEFAULT_CAP) -> bool:
    validate_assignment(v.signature, a, v.signature)
    return all(expressible(v, v.signature, a, op, max_size, cap) is not None
               for op in v.signature.names)


@dataclass(frozen=True)
class EquationSystem:
    base: Variety
    unknowns: tuple[tuple[str, int], ...]
    equations: tuple[tuple[Term, Term], ...]
    # (base op, bound): the base op must be a term over the unknowns of at most that size
    expressible: tuple[tuple[str, int], ...] = ()
    name: str = ""
    note: str = ""

    @property
    def signature(self) -> Signature:
        return self.base.signature.extend(self.unknowns)

    @property
    def unknown_signature(self) -> Signature:
        return Signature(self.unknowns)

    def __post_init__(self):
        clash = [n for n, _ in self.unknowns if n in self.base.signature]
        if clash:
            raise ValueError(f"unknown symbols clash with base operations: {clash}")
        sig = self.signature
        for l, r in self.equations:
            check_term(l, sig)
            check_term(r, sig)
        for op, bound in self.expressible:
            self.base.signature.arity(op)
            if bound < 1:
                raise ValueError("expressibility bound must be positive")


def candidate_terms(v: Variety, arity: int, max_size: int, distinct: bool = True,
                    cap: int = DEFAULT_CAP) -> list[Term]:
    """Terms over x1..x_arity, deduplicated by free-algebra value if ``distinct``
    (the first representative in size-then-lexicographic order is kept)."""
    ts = enumerate_terms(v.signature, range(1, arity + 1), max_size, cap)
    if not distinct:
        return ts
    seen: set[NormalForm] = set()
    out = []
    for t in ts:
        nf = normalize(t, v)
        if nf not in seen:
            seen.add(nf)
            out.append(t)
    return out


def holds_under(sys: EquationSystem, a: Mapping[str, Term]) -> bool:
    for l, r in sys.equations:
        if not identity_holds(expand(l, a), expand(r, a), sys.base):
            return False
    for op, bound in sys.expressible:
        if expressible(sys.base, sys.unknown_signature, a, op, bound) is None:
            return False
    return True


def solve_term_equations(sys: EquationSystem, max_size: int, cap: int = DEFAULT_CAP,
                         distinct: bool = True) -> list[TermAssignment]:
    """Every assignment of terms of size <= ``max_size`` to the unknowns
    satisfying the system.  Complete only up to ``max_size``."""
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    pools = [candidate_terms(sys.base, k, max_size, distinct, cap) for _, k in sys.unknowns]
    total = prod(len(p) for p in pools)
    if total > cap:
        raise CapExceeded("assignment search", cap, max_size)
    log.debug("solving %s: %d candidate assignments", sys.name or "system", total)
    names = [n for n, _ in sys.unknowns]
    found = []
    for combo in product(*pools):
        a = dict(zip(names, combo))
        if holds_under(sys, a):
            found.append(a)
    found.sort(key=lambda a: (sum(size(a[n]) for n in names), [sort_key(a[n]) for n in names]))
    return found
