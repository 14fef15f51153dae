"""Word problems for the shipped free algebras.

Each variety has a canonical normal form:

* magma: the term itself (the free magma is the term algebra);
* semigroup: the nonempty word of variable leaves;
* monoid: the word with unit leaves dropped (possibly empty);
* inverse semigroup: the birooted word tree of :mod:`catauto.munn`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence, Union

from .munn import MunnElement, parse_munn
from .terms import (App, Signature, Term, TermError, Var, app, check_term,
                    enumerate_terms, leaves, parse_term, render, var)

MAGMA, SEMIGROUP, MONOID, INVERSE = "magma", "semigroup", "monoid", "inverse_semigroup"
TAGS = (MAGMA, SEMIGROUP, MONOID, INVERSE)


class MalformedTerm(TermError):
    pass


_SIGNATURES = {
    MAGMA: Signature.of(mul=2),
    SEMIGROUP: Signature.of(mul=2),
    MONOID: Signature.of(mul=2, unit=0),
    INVERSE: Signature.of(mul=2, inv=1),
}


@dataclass(frozen=True)
class Variety:
    tag: str

    def __post_init__(self):
        if self.tag not in _SIGNATURES:
            raise ValueError(f"unknown variety {self.tag!r}; expected one of {TAGS}")

    @property
    def signature(self) -> Signature:
        return _SIGNATURES[self.tag]

    def parse(self, text: str) -> Term:
        return parse_term(text, self.signature)

    def defining_identities(self) -> list[tuple[Term, Term]]:
        x, y, z = var(1), var(2), var(3)
        mul = lambda a, b: app("mul", a, b)
        assoc = (mul(mul(x, y), z), mul(x, mul(y, z)))
        if self.tag == MAGMA:
            return []
        if self.tag == SEMIGROUP:
            return [assoc]
        if self.tag == MONOID:
            e = app("unit")
            return [assoc, (mul(x, e), x), (mul(e, x), x)]
        inv = lambda a: app("inv", a)
        return [
            assoc,
            (inv(mul(x, y)), mul(inv(y), inv(x))),
            (inv(inv(x)), x),
            (mul(mul(x, inv(x)), x), x),
            (mul(mul(inv(x), x), mul(inv(y), y)), mul(mul(inv(y), y), mul(inv(x), x))),
        ]

    def __str__(self):
        return self.tag


Magma = Variety(MAGMA)
Semigroup = Variety(SEMIGROUP)
Monoid = Variety(MONOID)
InverseSemigroup = Variety(INVERSE)

Payload = Union[Term, tuple, MunnElement]


@dataclass(frozen=True)
class NormalForm:
    tag: str
    payload: Payload

    @property
    def variety(self) -> Variety:
        return Variety(self.tag)

    def serialize(self) -> str:
        if self.tag == MAGMA:
            return render(self.payload)
        if self.tag in (SEMIGROUP, MONOID):
            return ",".join(map(str, self.payload))
        return self.payload.serialize()

    def __str__(self):
        return self.serialize()

    def __repr__(self):
        return f"NormalForm({self.tag}, {self.serialize()!r})"

    @property
    def size(self) -> int:
        """Number of generator letters in the shortest reading."""
        if self.tag == MAGMA:
            return len(leaves(self.payload))
        if self.tag in (SEMIGROUP, MONOID):
            return len(self.payload)
        return self.payload.size

    def sort_key(self) -> tuple[int, str]:
        return self.size, self.serialize()

    def generators(self) -> frozenset[int]:
        if self.tag == MAGMA:
            return frozenset(leaves(self.payload))
        if self.tag in (SEMIGROUP, MONOID):
            return frozenset(self.payload)
        return self.payload.labels

    def letters(self) -> tuple[int, ...]:
        """Signed letter word of the canonical reading (not for magma)."""
        if self.tag in (SEMIGROUP, MONOID):
            return self.payload
        if self.tag == INVERSE:
            return self.payload.word()
        raise TypeError("magma elements are not words")

    def to_term(self) -> Term:
        if self.tag == MAGMA:
            return self.payload
        letters = self.letters()
        if not letters:
            return app("unit")
        factors = [var(a) if a > 0 else app("inv", var(-a)) for a in letters]
        t = factors[-1]
        for f in reversed(factors[:-1]):
            t = app("mul", f, t)
        return t

    @classmethod
    def parse(cls, text: str, v: Variety) -> "NormalForm":
        text = text.strip()
        if v.tag == MAGMA:
            return normalize(v.parse(text), v)
        if v.tag in (SEMIGROUP, MONOID):
            if not text:
                if v.tag == SEMIGROUP:
                    raise ValueError("empty word is not a semigroup element")
                return cls(MONOID, ())
            try:
                word = tuple(int(p) for p in text.split(","))
            except ValueError:
                raise ValueError(f"malformed word {text!r}") from None
            if any(i < 1 for i in word):
                raise ValueError(f"malformed word {text!r}")
            return cls(v.tag, word)
        return cls(INVERSE, parse_munn(text))


def generator(v: Variety, i: int) -> NormalForm:
    return normalize(var(i), v)


# --- normalization -----------------------------------------------------------

def _check(t: Term, v: Variety) -> None:
    try:
        check_term(t, v.signature)
    except TermError as e:
        raise MalformedTerm(f"term {render(t)} is not over the {v.tag} signature: {e}") from None


def signed_letters(t: Term) -> list[int]:
    """Push inversions to the leaves: (ab)^-1 = b^-1 a^-1, (a^-1)^-1 = a."""
    if isinstance(t, Var):
        return [t.index]
    if t.op == "mul":
        return signed_letters(t.args[0]) + signed_letters(t.args[1])
    if t.op == "inv":
        return [-a for a in reversed(signed_letters(t.args[0]))]
    raise MalformedTerm(f"unexpected operation {t.op!r}")


def _monoid_word(t: Term) -> tuple[int, ...]:
    if isinstance(t, Var):
        return (t.index,)
    if t.op == "unit":
        return ()
    return _monoid_word(t.args[0]) + _monoid_word(t.args[1])


def normalize(t: Term, v: Variety) -> NormalForm:
    _check(t, v)
    if v.tag == MAGMA:
        return NormalForm(MAGMA, t)
    if v.tag == SEMIGROUP:
        return NormalForm(SEMIGROUP, tuple(leaves(t)))
    if v.tag == MONOID:
        return NormalForm(MONOID, _monoid_word(t))
    return NormalForm(INVERSE, MunnElement.from_word(signed_letters(t)))


def equal_in_free(t1: Term, t2: Term, v: Variety) -> bool:
    return normalize(t1, v) == normalize(t2, v)


def identity_holds(lhs: Term, rhs: Term, v: Variety) -> bool:
    # Each shipped variety is decided by its free algebra on the identity's variables.
    return equal_in_free(lhs, rhs, v)


def munn_tree(t: Term) -> MunnElement:
    return normalize(t, InverseSemigroup).payload


def invert(t: Term) -> Term:
    _check(t, InverseSemigroup)
    return app("inv", t)


# --- direct operations on normal forms ---------------------------------------

def multiply(a: NormalForm, b: NormalForm) -> NormalForm:
    if a.tag != b.tag:
        raise ValueError("normal forms from different varieties")
    if a.tag == MAGMA:
        return NormalForm(MAGMA, app("mul", a.payload, b.payload))
    if a.tag in (SEMIGROUP, MONOID):
        return NormalForm(a.tag, a.payload + b.payload)
    return NormalForm(INVERSE, a.payload * b.payload)


def inverse(a: NormalForm) -> NormalForm:
    if a.tag != INVERSE:
        raise ValueError(f"no inversion in {a.tag}")
    return NormalForm(INVERSE, a.payload.inverse())


def unit() -> NormalForm:
    return NormalForm(MONOID, ())


def evaluate(t: Term, v: Variety, env: Mapping[int, NormalForm]) -> NormalForm:
    """Value of ``t`` in the free algebra with variable i sent to ``env[i]``
    (unmapped variables stay generators)."""
    _check(t, v)

    def ev(u: Term) -> NormalForm:
        if isinstance(u, Var):
            return env[u.index] if u.index in env else generator(v, u.index)
        if u.op == "mul":
            return multiply(ev(u.args[0]), ev(u.args[1]))
        if u.op == "inv":
            return inverse(ev(u.args[0]))
        return unit()

    return ev(t)


def reverse(a: NormalForm) -> NormalForm:
    """The anti-automorphism fixing every generator (word reversal)."""
    if a.tag == MAGMA:
        def rev(t):
            if isinstance(t, Var):
                return t
            return App("mul", (rev(t.args[1]), rev(t.args[0])))
        return NormalForm(MAGMA, rev(a.payload))
    if a.tag in (SEMIGROUP, MONOID):
        return NormalForm(a.tag, a.payload[::-1])
    # reversal = inversion composed with the automorphism x_i -> x_i^-1
    m = a.payload
    flipped = MunnElement(frozenset(tuple(-c for c in w) for w in m.vertices),
                          tuple(-c for c in m.end))
    return NormalForm(INVERSE, flipped.inverse())


# --- bounded element enumeration ---------------------------------------------

def elements(v: Variety, rank: int, max_size: int) -> list[NormalForm]:
    """Every element of the free algebra on x1..x_rank with size <= max_size,
    ordered by size then serialization."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    gens = range(1, rank + 1)
    out: list[NormalForm]
    if v.tag in (SEMIGROUP, MONOID):
        out = [NormalForm(v.tag, ())] if v.tag == MONOID else []
        for n in range(1, max_size + 1):
            out.extend(NormalForm(v.tag, w) for w in product(gens, repeat=n))
    elif v.tag == MAGMA:
        if max_size < 1:
            return []
        out = [NormalForm(MAGMA, t) for t in
               enumerate_terms(v.signature, gens, 2 * max_size - 1)]
    else:
        letters = [s * i for i in gens for s in (1, -1)]
        seen: set[MunnElement] = set()
        frontier = {MunnElement.from_word((a,)) for a in letters} if max_size >= 1 else set()
        for _ in range(max_size):
            seen |= frontier
            frontier = {m * MunnElement.from_word((a,)) for m in frontier for a in letters}
        out = [NormalForm(INVERSE, m) for m in seen]
    out.sort(key=NormalForm.sort_key)
    return out


def random_element(v: Variety, rank: int, size: int, rng: random.Random) -> NormalForm:
    """A random element read from a random word (or bracketing) with ``size`` letters."""
    if v.tag == MONOID and size == 0:
        return unit()
    size = max(size, 1)
    if v.tag in (SEMIGROUP, MONOID):
        return NormalForm(v.tag, tuple(rng.randint(1, rank) for _ in range(size)))
    if v.tag == INVERSE:
        word = [rng.randint(1, rank) * rng.choice((1, -1)) for _ in range(size)]
        return NormalForm(INVERSE, MunnElement.from_word(word))
    return NormalForm(MAGMA, random_bracketing([var(rng.randint(1, rank)) for _ in range(size)], rng))


def random_bracketing(factors: Sequence[Term], rng: random.Random, op: str = "mul") -> Term:
    if len(factors) == 1:
        return factors[0]
    k = rng.randint(1, len(factors) - 1)
    return app(op, random_bracketing(factors[:k], rng, op), random_bracketing(factors[k:], rng, op))
