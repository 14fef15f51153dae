"""Finitely generated free algebras of a variety and the homomorphisms between them.

A morphism is determined by the images of the domain's generators, so it is
stored as that tuple of normal forms.  The rank-1 object with its generator
represents the forgetful functor: elements of A correspond to morphisms from
the rank-1 object to A.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Sequence

from .terms import DEFAULT_CAP, CapExceeded, Term, substitute
from .varieties import (NormalForm, Variety, elements, evaluate, generator, normalize,
                        random_element)


@dataclass(frozen=True)
class FreeObject:
    variety: Variety
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("free objects need at least one generator")

    def generator(self, i: int) -> NormalForm:
        return generator(self.variety, i)

    @property
    def generators(self) -> tuple[NormalForm, ...]:
        return tuple(self.generator(i) for i in range(1, self.rank + 1))

    def elements(self, max_size: int) -> list[NormalForm]:
        return elements(self.variety, self.rank, max_size)

    def owns(self, a: NormalForm) -> bool:
        return a.tag == self.variety.tag and all(i <= self.rank for i in a.generators())

    def __str__(self):
        return f"F_{self.variety.tag}({self.rank})"


@dataclass(frozen=True)
class Morphism:
    domain: FreeObject
    codomain: FreeObject
    images: tuple[NormalForm, ...]

    def __post_init__(self):
        if self.domain.variety != self.codomain.variety:
            raise ValueError("morphisms stay inside one variety")
        if len(self.images) != self.domain.rank:
            raise ValueError(f"expected {self.domain.rank} images, got {len(self.images)}")
        for a in self.images:
            if not self.codomain.owns(a):
                raise ValueError(f"image {a} is not an element of {self.codomain}")

    def __call__(self, a: NormalForm) -> NormalForm:
        return apply_morphism(self, a)

    def to_json(self) -> dict:
        return {"domain_rank": self.domain.rank, "codomain_rank": self.codomain.rank,
                "images": [a.serialize() for a in self.images]}

    @classmethod
    def from_json(cls, data: dict, v: Variety) -> "Morphism":
        return cls(FreeObject(v, int(data["domain_rank"])), FreeObject(v, int(data["codomain_rank"])),
                   tuple(NormalForm.parse(s, v) for s in data["images"]))

    def key(self) -> tuple:
        return (self.domain.rank, self.codomain.rank, tuple(a.serialize() for a in self.images))

    def __str__(self):
        imgs = ", ".join(f"x{i}->{a}" for i, a in enumerate(self.images, 1))
        return f"{self.domain}->{self.codomain} [{imgs}]"


@dataclass(frozen=True)
class RepresentedPoint:
    object: FreeObject
    basepoint: NormalForm

    @classmethod
    def of(cls, v: Variety) -> "RepresentedPoint":
        A0 = FreeObject(v, 1)
        return cls(A0, A0.generator(1))


def make_morphism(dom: FreeObject, cod: FreeObject, images: Sequence[Term]) -> Morphism:
    if len(images) != dom.rank:
        raise ValueError(f"expected {dom.rank} images, got {len(images)}")
    return Morphism(dom, cod, tuple(normalize(t, cod.variety) for t in images))


def identity(A: FreeObject) -> Morphism:
    return Morphism(A, A, A.generators)


def apply_morphism(m: Morphism, a: NormalForm) -> NormalForm:
    """Q(m)(a): substitute x_i -> m.images[i] in a reading of ``a``."""
    if not m.domain.owns(a):
        raise ValueError(f"{a} is not an element of {m.domain}")
    env = {i: img.to_term() for i, img in enumerate(m.images, 1)}
    return normalize(substitute(a.to_term(), env), m.codomain.variety)


def apply_direct(m: Morphism, a: NormalForm) -> NormalForm:
    """Same value as :func:`apply_morphism`, computed by evaluating in the free algebra."""
    if not m.domain.owns(a):
        raise ValueError(f"{a} is not an element of {m.domain}")
    return evaluate(a.to_term(), m.codomain.variety, dict(enumerate(m.images, 1)))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    if f.codomain != g.domain:
        raise ValueError(f"cannot compose {g} after {f}")
    return Morphism(f.domain, g.codomain, tuple(apply_direct(g, a) for a in f.images))


def alpha(a: NormalForm, A: FreeObject) -> Morphism:
    """The unique morphism from the rank-1 object sending x1 to ``a``."""
    if not A.owns(a):
        raise ValueError(f"{a} is not an element of {A}")
    return Morphism(FreeObject(A.variety, 1), A, (a,))


def point(m: Morphism) -> NormalForm:
    """Inverse of :func:`alpha`: the image of the base point."""
    if m.domain.rank != 1:
        raise ValueError("not a morphism out of the rank-1 object")
    return m.images[0]


def theta(A: FreeObject, f: Sequence[NormalForm]) -> Morphism:
    """The endomorphism of A sending generator i to f[i-1]."""
    return Morphism(A, A, tuple(f))


def hom_set(A: FreeObject, B: FreeObject, max_size: int, cap: int = DEFAULT_CAP) -> list[Morphism]:
    if A.variety != B.variety:
        raise ValueError("objects from different varieties")
    els = B.elements(max_size)
    if prod([len(els)] * A.rank) > cap:
        raise CapExceeded(f"Hom({A}, {B})", cap, max_size)
    return [Morphism(A, B, imgs) for imgs in product(els, repeat=A.rank)]


def random_morphism(A: FreeObject, B: FreeObject, max_size: int, rng: random.Random) -> Morphism:
    """Images drawn size-stratified: a size uniform in 1..max_size, then a random element."""
    imgs = tuple(random_element(B.variety, B.rank, rng.randint(1, max_size), rng)
                 for _ in range(A.rank))
    return Morphism(A, B, imgs)
