"""Finite algebras as operation tables.

Brute-force homomorphism search, right/left indicator checks, and the
automorphisms of the full and partial transformation monoids.  Composition of
transformations is ``(f*g)(x) = f(g(x))`` throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .terms import DEFAULT_CAP, CapExceeded

MAX_INDICATOR_CARRIER = 6
MAX_TOTAL_N = 4
MAX_PARTIAL_N = 3


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    size: int
    ops: dict[str, np.ndarray]
    name: str = ""
    labels: tuple | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("carrier must be nonempty")
        ops = {}
        for op, t in self.ops.items():
            t = np.asarray(t, dtype=np.int64)
            if t.shape != (self.size,) * t.ndim:
                raise ValueError(f"table for {op} has shape {t.shape}, carrier {self.size}")
            if t.size and (t.min() < 0 or t.max() >= self.size):
                raise ValueError(f"table for {op} leaves the carrier")
            ops[op] = t
        object.__setattr__(self, "ops", ops)
        # flat python lists for the hot loops
        object.__setattr__(self, "_entries", {
            op: [(args, int(t[args])) for args in product(range(self.size), repeat=t.ndim)]
            for op, t in ops.items()})

    @property
    def signature(self) -> tuple[tuple[str, int], ...]:
        return tuple(sorted((op, t.ndim) for op, t in self.ops.items()))

    def arity(self, op: str) -> int:
        return self.ops[op].ndim

    def entries(self, op: str) -> list[tuple[tuple[int, ...], int]]:
        return self._entries[op]

    def apply(self, op: str, *args: int) -> int:
        return int(self.ops[op][args])

    def __repr__(self):
        return f"FiniteAlgebra({self.name or '?'}, size={self.size}, ops={self.signature})"

    def __eq__(self, other):
        return (isinstance(other, FiniteAlgebra) and self.size == other.size
                and self.signature == other.signature
                and all(np.array_equal(self.ops[o], other.ops[o]) for o in self.ops))

    def __hash__(self):
        return hash((self.size, tuple((o, self.ops[o].tobytes()) for o in sorted(self.ops))))


@dataclass(frozen=True)
class FiniteMap:
    values: tuple
    domain: str = ""
    codomain: str = ""

    def __call__(self, a: int):
        return self.values[a]

    @property
    def partial(self) -> bool:
        return any(v is None for v in self.values)


def _same_signature(A: FiniteAlgebra, B: FiniteAlgebra) -> None:
    if A.signature != B.signature:
        raise ValueError(f"signature mismatch: {A.signature} vs {B.signature}")


def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, h: Sequence[int]) -> bool:
    for op in A.ops:
        tb = B.ops[op]
        for args, res in A.entries(op):
            if h[res] != tb[tuple(h[a] for a in args)]:
                return False
    return True


def homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra, cap: int = DEFAULT_CAP) -> list[FiniteMap]:
    """Every homomorphism A -> B, by backtracking with forward propagation."""
    _same_signature(A, B)
    n = A.size
    btab = {op: B.ops[op].tolist() for op in B.ops}
    watch: list[list[tuple[str, tuple, int]]] = [[] for _ in range(n)]
    constants = []
    for op in A.ops:
        for args, res in A.entries(op):
            if not args:
                constants.append((res, int(B.ops[op][()])))
            for e in set(args) | {res}:
                watch[e].append((op, args, res))
    h = [-1] * n
    out: list[FiniteMap] = []
    visits = 0

    def lookup(op, vals):
        t = btab[op]
        for v in vals:
            t = t[v]
        return t

    def assign(e: int, val: int, trail: list[int]) -> bool:
        stack = [(e, val)]
        while stack:
            e, val = stack.pop()
            if h[e] != -1:
                if h[e] != val:
                    return False
                continue
            h[e] = val
            trail.append(e)
            for op, args, res in watch[e]:
                if any(h[a] == -1 for a in args):
                    continue
                want = lookup(op, [h[a] for a in args])
                if h[res] == -1:
                    stack.append((res, want))
                elif h[res] != want:
                    return False
        return True

    def undo(trail):
        for e in trail:
            h[e] = -1

    def search():
        nonlocal visits
        visits += 1
        if visits > cap:
            raise CapExceeded("homomorphism search", cap)
        try:
            i = h.index(-1)
        except ValueError:
            out.append(FiniteMap(tuple(h), A.name, B.name))
            return
        for val in range(B.size):
            trail: list[int] = []
            if assign(i, val, trail):
                search()
            undo(trail)

    trail0: list[int] = []
    if all(assign(e, v, trail0) for e, v in constants):
        search()
    out.sort(key=lambda m: m.values)
    return out


def is_bijection(values: Sequence) -> bool:
    return sorted(values) == list(range(len(values)))


@dataclass
class IndicatorResult:
    holds: bool
    certificate: dict | None = None
    pairs_checked: int = 0
    bijections_checked: int = 0

    def to_json(self) -> dict:
        return {"holds": self.holds, "certificate": self.certificate,
                "pairs_checked": self.pairs_checked, "bijections_checked": self.bijections_checked}


def _check_universe(A0: FiniteAlgebra, universe: Sequence[FiniteAlgebra], max_carrier: int):
    for A in universe:
        _same_signature(A0, A)
        if A.size > max_carrier:
            raise CapExceeded(f"indicator check on {A.name}", max_carrier, unit="carrier elements")


def _label(A: FiniteAlgebra, i: int) -> str:
    return A.name or f"universe[{i}]"


def is_right_indicator(A0: FiniteAlgebra, universe: Sequence[FiniteAlgebra],
                       max_carrier: int = MAX_INDICATOR_CARRIER) -> IndicatorResult:
    """For all A, B and bijections s: A -> B, if every nu . s (nu: B -> A0 a
    homomorphism) is a homomorphism, then s is an isomorphism."""
    _check_universe(A0, universe, max_carrier)
    res = IndicatorResult(True)
    to_a0 = {id(B): homomorphisms(B, A0) for B in universe}
    for i, A in enumerate(universe):
        for j, B in enumerate(universe):
            if A.size != B.size:
                continue
            res.pairs_checked += 1
            homs = to_a0[id(B)]
            for s in permutations(range(A.size)):
                res.bijections_checked += 1
                if is_homomorphism(A, B, s):
                    continue
                if all(is_homomorphism(A, A0, [nu.values[s[a]] for a in range(A.size)]) for nu in homs):
                    res.holds = False
                    res.certificate = {"A": _label(A, i), "B": _label(B, j), "A_index": i,
                                       "B_index": j, "s": list(s)}
                    return res
    return res


def is_left_indicator(A0: FiniteAlgebra, universe: Sequence[FiniteAlgebra],
                      max_carrier: int = MAX_INDICATOR_CARRIER) -> IndicatorResult:
    """For all A, B and bijections s: A -> B, if every s . nu (nu: A0 -> A a
    homomorphism) is a homomorphism, then s is an isomorphism."""
    _check_universe(A0, universe, max_carrier)
    res = IndicatorResult(True)
    from_a0 = {id(A): homomorphisms(A0, A) for A in universe}
    for i, A in enumerate(universe):
        homs = from_a0[id(A)]
        for j, B in enumerate(universe):
            if A.size != B.size:
                continue
            res.pairs_checked += 1
            for s in permutations(range(A.size)):
                res.bijections_checked += 1
                if is_homomorphism(A, B, s):
                    continue
                if all(is_homomorphism(A0, B, [s[nu.values[w]] for w in range(A0.size)]) for nu in homs):
                    res.holds = False
                    res.certificate = {"A": _label(A, i), "B": _label(B, j), "A_index": i,
                                       "B_index": j, "s": list(s)}
                    return res
    return res


# --- small algebra zoo -------------------------------------------------------

def all_binary_algebras(n: int, *, op: str = "mul", associative=False, commutative=False,
                        idempotent=False) -> list[FiniteAlgebra]:
    """Every labelled binary algebra on n elements with the requested laws."""
    out = []
    rng = range(n)
    for flat in product(rng, repeat=n * n):
        t = [flat[i * n:(i + 1) * n] for i in rng]
        if idempotent and any(t[a][a] != a for a in rng):
            continue
        if commutative and any(t[a][b] != t[b][a] for a in rng for b in rng):
            continue
        if associative and any(t[t[a][b]][c] != t[a][t[b][c]] for a in rng for b in rng for c in rng):
            continue
        out.append(FiniteAlgebra(n, {op: np.array(t, dtype=np.int64).reshape((n, n))}))
    return out


def semilattices(max_n: int, op: str = "mul") -> list[FiniteAlgebra]:
    out = []
    for n in range(1, max_n + 1):
        for k, A in enumerate(all_binary_algebras(n, op=op, associative=True,
                                                  commutative=True, idempotent=True)):
            out.append(FiniteAlgebra(A.size, A.ops, f"semilattice{n}_{k}"))
    return out


def chain_semilattice(n: int = 2, op: str = "mul") -> FiniteAlgebra:
    t = np.minimum.outer(np.arange(n), np.arange(n))
    return FiniteAlgebra(n, {op: t}, f"chain{n}")


def trivial_algebra(signature: Iterable[tuple[str, int]]) -> FiniteAlgebra:
    return FiniteAlgebra(1, {op: np.zeros((1,) * k, dtype=np.int64) for op, k in signature}, "trivial")


# --- transformation monoids --------------------------------------------------

def _compose(f: tuple, g: tuple) -> tuple:
    return tuple(None if y is None else f[y] for y in g)


def transformation_monoid(n: int, partial: bool = False, cap: int | None = None) -> FiniteAlgebra:
    """T_n (all maps of {0..n-1}) or PT_n (all partial maps, None = undefined).

    The product is composition f . g, applying g first.
    """
    limit = cap if cap is not None else (MAX_PARTIAL_N if partial else MAX_TOTAL_N)
    if n < 1:
        raise ValueError("n must be positive")
    if n > limit:
        raise CapExceeded(f"transformation monoid on {n} points", limit, unit="points allowed")
    values = list(range(n)) + ([None] if partial else [])
    elems = list(product(values, repeat=n))
    index = {f: i for i, f in enumerate(elems)}
    table = np.array([[index[_compose(f, g)] for g in elems] for f in elems], dtype=np.int64)
    name = f"{'PT' if partial else 'T'}_{n}"
    return FiniteAlgebra(len(elems), {"mul": table}, name, tuple(elems))


def conjugate(f: tuple, pi: Sequence[int]) -> tuple:
    """pi . f . pi^-1 as a (partial) transformation."""
    out = [None] * len(f)
    for x, y in enumerate(f):
        out[pi[x]] = None if y is None else pi[y]
    return tuple(out)


def conjugation_map(M: FiniteAlgebra, pi: Sequence[int]) -> tuple[int, ...]:
    index = {f: i for i, f in enumerate(M.labels)}
    return tuple(index[conjugate(f, pi)] for f in M.labels)


def _closure(M: FiniteAlgebra, gens: Sequence[int]) -> set[int]:
    t = M.ops["mul"]
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = int(t[a, g])
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def generating_set(M: FiniteAlgebra) -> list[int]:
    """Greedy semigroup generating set: repeatedly add the element that grows
    the generated subsemigroup the most (ties to the smallest index)."""
    gens: list[int] = []
    closed: set[int] = set()
    while len(closed) < M.size:
        best, best_c = None, None
        for e in range(M.size):
            if e in closed:
                continue
            c = _closure(M, gens + [e])
            if best_c is None or len(c) > len(best_c):
                best, best_c = e, c
        gens.append(best)
        closed = best_c
    return gens


def _invariants(M: FiniteAlgebra) -> list[tuple]:
    t = M.ops["mul"].tolist()
    rng = range(M.size)
    out = []
    for e in rng:
        powers, p = [], e
        while p not in powers:
            powers.append(p)
            p = t[p][e]
        right = {t[e][m] for m in rng}
        left = {t[m][e] for m in rng}
        two = {t[t[a][e]][b] for a in rng for b in rng}
        out.append((t[e][e] == e, len(powers), powers.index(p), len(right), len(left), len(two)))
    return out


def semigroup_automorphisms(M: FiniteAlgebra, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All automorphisms of (M, mul), by searching images of a generating set."""
    t = M.ops["mul"].tolist()
    gens = generating_set(M)
    inv = _invariants(M)
    # express every element as (element, generator) right-multiplications from a generator
    order: list[tuple[int, int | None, int | None]] = [(g, None, None) for g in gens]
    seen = set(gens)
    i = 0
    while i < len(order):
        a = order[i][0]
        for k, g in enumerate(gens):
            b = t[a][g]
            if b not in seen:
                seen.add(b)
                order.append((b, a, k))
        i += 1
    pools = [[c for c in range(M.size) if inv[c] == inv[g]] for g in gens]
    total = 1
    for p in pools:
        total *= len(p)
    if total > cap:
        raise CapExceeded("automorphism search", cap)
    out = []
    for imgs in product(*pools):
        phi = [-1] * M.size
        for g, img in zip(gens, imgs):
            if phi[g] not in (-1, img):
                break
            phi[g] = img
        else:
            for b, a, k in order[len(gens):]:
                phi[b] = t[phi[a]][imgs[k]]
            if len(set(phi)) != M.size:
                continue
            if all(phi[t[a][b]] == t[phi[a]][phi[b]] for a in range(M.size) for b in range(M.size)):
                out.append(tuple(phi))
    out.sort()
    return out


def automorphisms_bruteforce(M: FiniteAlgebra, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All bijective endomorphisms, via the generic homomorphism search."""
    return [h.values for h in homomorphisms(M, M, cap) if is_bijection(h.values)]


def partial_identities(M: FiniteAlgebra) -> dict[frozenset, int]:
    """Delta_A for every subset A of the base set, keyed by A."""
    out = {}
    for i, f in enumerate(M.labels):
        if all(y is None or y == x for x, y in enumerate(f)):
            out[frozenset(x for x, y in enumerate(f) if y is not None)] = i
    return out


@dataclass
class MonoidVerdict:
    name: str
    n: int
    partial: bool
    all_inner: bool
    automorphisms: list[tuple[int, ...]]
    witnesses: list[list[int] | None]
    delta_checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"monoid": self.name, "n": self.n, "partial": self.partial,
                "all_inner": self.all_inner, "automorphism_count": len(self.automorphisms),
                "witnesses": self.witnesses, "delta_checks": self.delta_checks}


def check_automorphisms_inner(M: FiniteAlgebra, n: int, partial: bool,
                              cap: int = DEFAULT_CAP) -> MonoidVerdict:
    """Every automorphism of M must be conjugation by a permutation of the base set."""
    if M.labels is None or len(M.labels[0]) != n:
        raise ValueError("M must come from transformation_monoid(n, partial)")
    auts = semigroup_automorphisms(M, cap)
    perm_maps = {conjugation_map(M, pi): list(pi) for pi in permutations(range(n))}
    witnesses = [perm_maps.get(phi) for phi in auts]
    verdict = MonoidVerdict(M.name, n, partial, all(w is not None for w in witnesses), auts, witnesses)
    if partial:
        deltas = partial_identities(M)
        by_index = {i: A for A, i in deltas.items()}
        permutes = order = True
        for phi in auts:
            images = {A: phi[i] for A, i in deltas.items()}
            if not all(j in by_index and len(by_index[j]) == len(A) for A, j in images.items()):
                permutes = False
                continue
            for A, B in product(deltas, repeat=2):
                if (A <= B) != (by_index[images[A]] <= by_index[images[B]]):
                    order = False
        verdict.delta_checks = {"deltas_to_deltas": permutes, "order_preserved": order,
                                "subsets": len(deltas)}
    return verdict


# --- table files ---------------------------------------------------------------

def parse_table(text: str, name: str = "") -> FiniteAlgebra:
    """Format: ``size N`` then blocks ``op NAME ARITY`` followed by N**ARITY
    integers in row-major order.  ``#`` starts a comment; ``name X`` is optional."""
    tokens: list[str] = []
    for line in text.splitlines():
        tokens.extend(line.split("#", 1)[0].split())
    it = iter(tokens)
    size = None
    ops: dict[str, np.ndarray] = {}
    try:
        for tok in it:
            if tok == "name":
                name = next(it)
            elif tok == "size":
                size = int(next(it))
            elif tok == "op":
                if size is None:
                    raise ValueError("'size' must precede the tables")
                op, k = next(it), int(next(it))
                vals = [int(next(it)) for _ in range(size ** k)]
                ops[op] = np.array(vals, dtype=np.int64).reshape((size,) * k)
            else:
                raise ValueError(f"unexpected token {tok!r}")
    except StopIteration:
        raise ValueError("table file ended early") from None
    if size is None:
        raise ValueError("missing 'size'")
    return FiniteAlgebra(size, ops, name)


def format_table(A: FiniteAlgebra) -> str:
    lines = []
    if A.name:
        lines.append(f"name {A.name}")
    lines.append(f"size {A.size}")
    for op in sorted(A.ops):
        t = A.ops[op]
        lines.append(f"op {op} {t.ndim}")
        if t.ndim == 0:
            lines.append(str(int(t)))
        else:
            for row in t.reshape(-1, A.size):
                lines.append(" ".join(map(str, row.tolist())))
    return "\n".join(lines) + "\n"


def load_table(path: str | Path) -> FiniteAlgebra:
    p = Path(path)
    return parse_table(p.read_text(), p.stem)


def load_universe(paths: Iterable[str | Path]) -> list[FiniteAlgebra]:
    out = []
    for path in paths:
        p = Path(path)
        files = sorted(p.glob("*.tbl")) if p.is_dir() else [p]
        out.extend(load_table(f) for f in files)
    return out
