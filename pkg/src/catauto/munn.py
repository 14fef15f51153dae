"""Birooted word trees for the free inverse semigroup.

A letter is a nonzero integer: ``+i`` stands for the generator x_i and ``-i``
for its inverse.  The tree of a word is the subtree of the Cayley graph of the
free group traced out by the word, read from the identity vertex.  Vertices are
stored as freely reduced words relative to the start vertex, so two elements
are equal exactly when their vertex sets and end vertices are equal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Word = tuple[int, ...]


def reduce_word(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert_word(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


@dataclass(frozen=True)
class MunnElement:
    vertices: frozenset[Word]
    end: Word

    start: Word = ()

    @classmethod
    def from_word(cls, letters: Sequence[int]) -> "MunnElement":
        if not letters:
            raise ValueError("the free inverse semigroup has no empty word")
        cur: Word = ()
        seen = {cur}
        for a in letters:
            if a == 0:
                raise ValueError("letter 0 is not a generator")
            cur = cur[:-1] if cur and cur[-1] == -a else cur + (a,)
            seen.add(cur)
        return cls(frozenset(seen), cur)

    @classmethod
    def generator(cls, i: int) -> "MunnElement":
        return cls.from_word((i,))

    def __mul__(self, other: "MunnElement") -> "MunnElement":
        shift = self.end
        verts = set(self.vertices)
        verts.update(reduce_word(shift + w) for w in other.vertices)
        return MunnElement(frozenset(verts), reduce_word(shift + other.end))

    def inverse(self) -> "MunnElement":
        back = invert_word(self.end)
        return MunnElement(frozenset(reduce_word(back + w) for w in self.vertices), back)

    def relabel(self, mapping: dict[int, int]) -> "MunnElement":
        """Apply a letter map (must send each letter to a letter, with m(-a) = -m(a))."""
        return MunnElement(frozenset(tuple(mapping[a] for a in w) for w in self.vertices),
                           tuple(mapping[a] for a in self.end))

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    @property
    def labels(self) -> frozenset[int]:
        return frozenset(abs(a) for w in self.vertices for a in w)

    def is_idempotent(self) -> bool:
        return self.end == ()

    @cached_property
    def _children(self) -> dict[Word, list[tuple[int, Word]]]:
        kids: dict[Word, list[tuple[int, Word]]] = {w: [] for w in self.vertices}
        for w in self.vertices:
            if w:
                kids[w[:-1]].append((w[-1], w))
        for lst in kids.values():
            lst.sort(key=lambda e: (abs(e[0]), e[0] < 0))
        return kids

    def word(self) -> Word:
        """The shortest canonical word with this tree: excursions in label
        order, with the branch towards the end vertex taken last and not
        retraced."""
        out: list[int] = []
        kids = self._children

        def excursion(v: Word):
            for a, w in kids[v]:
                out.append(a)
                excursion(w)
                out.append(-a)

        v: Word = ()
        for i in range(len(self.end) + 1):
            nxt = self.end[: i + 1] if i < len(self.end) else None
            for a, w in kids[v]:
                if w == nxt:
                    continue
                out.append(a)
                excursion(w)
                out.append(-a)
            if nxt is not None:
                out.append(self.end[i])
                v = nxt
        return tuple(out)

    @property
    def size(self) -> int:
        return 2 * self.edge_count - len(self.end)

    @cached_property
    def _dfs(self) -> tuple[str, dict[Word, int]]:
        ids: dict[Word, int] = {}
        kids = self._children

        def walk(v: Word) -> str:
            ids[v] = len(ids)
            parts = []
            for a, w in kids[v]:
                parts.append(f"[{abs(a)}{'+' if a > 0 else '-'}{walk(w)}]")
            return "".join(parts)

        return walk(()), ids

    def serialize(self) -> str:
        dfs, ids = self._dfs
        return f"{dfs}|{ids[()]}|{ids[self.end]}"

    def __str__(self):
        return self.serialize()


_EDGE = re.compile(r"\[(\d+)([+-])")


def parse_munn(text: str) -> MunnElement:
    try:
        dfs, start_id, end_id = text.strip().split("|")
        start_id, end_id = int(start_id), int(end_id)
    except ValueError:
        raise ValueError(f"malformed Munn serialization {text!r}") from None
    if start_id != 0:
        raise ValueError("start vertex must have id 0")
    order: list[Word] = [()]
    stack: list[Word] = [()]
    i = 0
    while i < len(dfs):
        if dfs[i] == "[":
            m = _EDGE.match(dfs, i)
            if not m:
                raise ValueError(f"malformed edge at {i} in {text!r}")
            label = int(m.group(1)) * (1 if m.group(2) == "+" else -1)
            w = stack[-1] + (label,)
            if reduce_word(w) != w or label == 0:
                raise ValueError(f"edge at {i} backtracks in {text!r}")
            order.append(w)
            stack.append(w)
            i = m.end()
        elif dfs[i] == "]":
            if len(stack) == 1:
                raise ValueError(f"unbalanced ']' at {i} in {text!r}")
            stack.pop()
            i += 1
        else:
            raise ValueError(f"unexpected {dfs[i]!r} at {i} in {text!r}")
    if len(stack) != 1 or not 0 <= end_id < len(order):
        raise ValueError(f"malformed Munn serialization {text!r}")
    if len(set(order)) != len(order):
        raise ValueError(f"repeated edge in {text!r}")
    el = MunnElement(frozenset(order), order[end_id])
    if el.serialize() != text.strip():
        raise ValueError(f"non-canonical Munn serialization {text!r}")
    return el
