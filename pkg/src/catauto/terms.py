"""Signatures, terms, substitution and bounded term enumeration.

Terms are immutable and hashable.  Variables are indexed from 1 and render as
``x<N>``; applications render as S-expressions, e.g. ``(mul x1 (inv x2))``.
Nullary operations render as their bare name.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence, Union

DEFAULT_CAP = 10**6


class TermError(ValueError):
    pass


class TermSyntaxError(TermError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnknownOperation(TermError):
    pass


class ArityMismatch(TermError):
    pass


class CapExceeded(RuntimeError):
    """A bounded search would exceed its configured budget."""

    def __init__(self, what: str, cap: int, bound=None, unit: str = "candidates"):
        msg = f"{what}: more than {cap} {unit}"
        if bound is not None:
            msg += f" (bound {bound})"
        super().__init__(msg)
        self.cap = cap
        self.bound = bound


@dataclass(frozen=True)
class Signature:
    operations: tuple[tuple[str, int], ...]
    max_arity: int = field(init=False)

    def __post_init__(self):
        ops = tuple((str(n), int(a)) for n, a in self.operations)
        names = [n for n, _ in ops]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate operation names in {names}")
        if any(a < 0 for _, a in ops):
            raise ValueError("arities must be non-negative")
        object.__setattr__(self, "operations", ops)
        object.__setattr__(self, "max_arity", max((a for _, a in ops), default=0))

    @classmethod
    def of(cls, **arities: int) -> "Signature":
        return cls(tuple(arities.items()))

    def arity(self, name: str) -> int:
        for n, a in self.operations:
            if n == name:
                return a
        raise UnknownOperation(f"unknown operation symbol {name!r}")

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self.operations)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.operations)

    def extend(self, more: Iterable[tuple[str, int]]) -> "Signature":
        return Signature(self.operations + tuple(more))


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise TermError(f"variable index must be positive, got {self.index}")

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...] = ()

    def __str__(self):
        if not self.args:
            return self.op
        return "(" + " ".join([self.op, *map(str, self.args)]) + ")"


Term = Union[Var, App]


def var(i: int) -> Var:
    return Var(i)


def app(op: str, *args: Term) -> App:
    return App(op, tuple(args))


def render(t: Term) -> str:
    return str(t)


def size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(size(a) for a in t.args)


def variables(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return frozenset(out)


def leaves(t: Term) -> list[int]:
    """Variable indices read left to right."""
    if isinstance(t, Var):
        return [t.index]
    out = []
    for a in t.args:
        out.extend(leaves(a))
    return out


def operations(t: Term) -> set[str]:
    if isinstance(t, Var):
        return set()
    out = {t.op}
    for a in t.args:
        out |= operations(a)
    return out


def subterms(t: Term):
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def check_term(t: Term, sig: Signature) -> None:
    """Raise if ``t`` uses an undeclared symbol or a wrong arity."""
    if isinstance(t, Var):
        return
    k = sig.arity(t.op)
    if k != len(t.args):
        raise ArityMismatch(f"{t.op} expects {k} arguments, got {len(t.args)}")
    for a in t.args:
        check_term(a, sig)


def sort_key(t: Term) -> tuple[int, str]:
    return size(t), render(t)


# --- parsing -----------------------------------------------------------------

def _tokenize(text: str):
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            yield c, i
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            yield text[i:j], i
            i = j
    yield None, n


def _is_var(tok: str) -> bool:
    return len(tok) > 1 and tok[0] == "x" and tok[1:].isdigit()


def parse_term(text: str, sig: Signature) -> Term:
    tokens = list(_tokenize(text))
    pos = 0

    def atom(tok, at):
        if _is_var(tok):
            idx = int(tok[1:])
            if idx < 1:
                raise TermSyntaxError(f"variable index must be positive: {tok}", at)
            return Var(idx)
        if tok not in sig:
            raise UnknownOperation(f"unknown operation symbol {tok!r} at position {at}")
        if sig.arity(tok) != 0:
            raise ArityMismatch(f"{tok} expects {sig.arity(tok)} arguments, got 0")
        return App(tok)

    def parse():
        nonlocal pos
        tok, at = tokens[pos]
        if tok is None:
            raise TermSyntaxError("unexpected end of input", at)
        if tok == ")":
            raise TermSyntaxError("unexpected ')'", at)
        pos += 1
        if tok != "(":
            return atom(tok, at)
        head, hat = tokens[pos]
        if head is None or head in "()":
            raise TermSyntaxError("expected operation symbol", hat)
        pos += 1
        if _is_var(head):
            raise TermSyntaxError(f"variable {head} in operator position", hat)
        if head not in sig:
            raise UnknownOperation(f"unknown operation symbol {head!r} at position {hat}")
        args = []
        while tokens[pos][0] != ")":
            if tokens[pos][0] is None:
                raise TermSyntaxError("missing ')'", tokens[pos][1])
            args.append(parse())
        pos += 1
        k = sig.arity(head)
        if k != len(args):
            raise ArityMismatch(f"{head} expects {k} arguments, got {len(args)} (position {hat})")
        return App(head, tuple(args))

    t = parse()
    if tokens[pos][0] is not None:
        raise TermSyntaxError("trailing input", tokens[pos][1])
    return t


# --- substitution ------------------------------------------------------------

Substitution = Mapping[int, Term]


def substitute(t: Term, s: Substitution) -> Term:
    if isinstance(t, Var):
        return s.get(t.index, t)
    if not t.args:
        return t
    return App(t.op, tuple(substitute(a, s) for a in t.args))


def compose_substitutions(s2: Substitution, s1: Substitution) -> dict[int, Term]:
    """The substitution ``x -> substitute(s1(x), s2)``."""
    out = {k: substitute(v, s2) for k, v in s1.items()}
    for k, v in s2.items():
        out.setdefault(k, v)
    return out


# --- enumeration -------------------------------------------------------------

def _compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def terms_by_size(sig: Signature, vars: Iterable[int], max_size: int,
                  cap: int = DEFAULT_CAP) -> list[list[Term]]:
    """``out[n]`` holds every term of node count ``n``, sorted by rendering."""
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    vs = sorted(set(vars))
    if not vs and not any(a == 0 for _, a in sig.operations):
        raise ValueError("no variables and no nullary operations")
    levels: list[list[Term]] = [[] for _ in range(max_size + 1)]
    total = 0
    for n in range(1, max_size + 1):
        level: list[Term] = []
        if n == 1:
            level.extend(Var(i) for i in vs)
            level.extend(App(name) for name, a in sig.operations if a == 0)
        else:
            for name, k in sig.operations:
                if k == 0 or n - 1 < k:
                    continue
                for sizes in _compositions(n - 1, k):
                    for args in product(*(levels[s] for s in sizes)):
                        level.append(App(name, args))
                        if total + len(level) > cap:
                            raise CapExceeded("term enumeration", cap, max_size)
        level.sort(key=render)
        levels[n] = level
        total += len(level)
    return levels


def enumerate_terms(sig: Signature, vars: Iterable[int], max_size: int,
                    cap: int = DEFAULT_CAP) -> list[Term]:
    """All terms over ``sig`` and ``vars`` with at most ``max_size`` nodes.

    Ordered by size, then by canonical rendering.
    """
    levels = terms_by_size(sig, vars, max_size, cap)
    return [t for level in levels for t in level]
