"""Candidate category automorphisms and the bijections they induce.

An automorphism that fixes the rank-1 object A0 induces on every object A the
bijection ``s_A(a) = Q(Phi(alpha_a))(x0)``, and then ``Q(Phi(nu)) =
s_B . Q(nu) . s_A^-1`` for every morphism nu: A -> B.  Everything here is
checked on bounded data only: a passing check means "no counterexample up to
the stated bound".
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Iterable, Mapping, Sequence

from .category import (FreeObject, Morphism, alpha, apply_direct, compose, hom_set,
                       identity, point, random_morphism)
from .derived import (TermAssignment, build_derived_algebra, candidate_terms,
                      derived_apply, render_assignment)
from .reports import FAIL, GAP, PASS, SKIPPED, Report
from .terms import DEFAULT_CAP, CapExceeded, Term, app, render, var
from .varieties import (NormalForm, Variety, evaluate, inverse, multiply, normalize,
                        reverse, unit)

IDENTITY, MIRROR, TABLE = "identity", "mirror", "table"


class CoverageGap(LookupError):
    pass


@dataclass
class AutomorphismSpec:
    kind: str
    variety: Variety
    object_action: dict[int, int] = field(default_factory=dict)
    table: dict[tuple, Morphism] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.kind not in (IDENTITY, MIRROR, TABLE):
            raise ValueError(f"unknown automorphism kind {self.kind!r}")
        src, dst = set(self.object_action), set(self.object_action.values())
        if src != dst or len(dst) != len(self.object_action):
            raise ValueError("object_action must be a bijection on the declared ranks")
        if self.kind != TABLE and any(k != v for k, v in self.object_action.items()):
            raise ValueError(f"{self.kind} automorphisms fix every object")
        for key, img in self.table.items():
            dom, cod = key[0], key[1]
            if (img.domain.rank, img.codomain.rank) != (self.rank_of(dom), self.rank_of(cod)):
                raise ValueError(f"table entry {key} -> {img} ignores object_action")

    @classmethod
    def identity(cls, v: Variety) -> "AutomorphismSpec":
        return cls(IDENTITY, v, name="identity")

    @classmethod
    def mirror(cls, v: Variety) -> "AutomorphismSpec":
        return cls(MIRROR, v, name="mirror")

    @classmethod
    def from_table(cls, v: Variety, pairs: Iterable[tuple[Morphism, Morphism]],
                   object_action: Mapping[int, int] | None = None, name: str = "") -> "AutomorphismSpec":
        return cls(TABLE, v, dict(object_action or {}), {m.key(): img for m, img in pairs}, name)

    def rank_of(self, rank: int) -> int:
        return self.object_action.get(rank, rank)

    def on_object(self, A: FreeObject) -> FreeObject:
        return FreeObject(A.variety, self.rank_of(A.rank))

    def __call__(self, m: Morphism) -> Morphism:
        if self.kind == IDENTITY:
            return m
        if self.kind == MIRROR:
            # rev . m . rev^-1 on generators: rev fixes every generator
            return Morphism(m.domain, m.codomain, tuple(reverse(a) for a in m.images))
        try:
            return self.table[m.key()]
        except KeyError:
            raise CoverageGap(f"{self.name or 'table'} is not defined on {m}") from None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "variety": self.variety.tag,
               "object_action": [[k, v] for k, v in sorted(self.object_action.items())]}
        if self.kind == TABLE:
            out["table"] = [{"from": _key_json(k), "to": img.to_json()}
                            for k, img in sorted(self.table.items())]
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "AutomorphismSpec":
        v = Variety(data["variety"])
        action = {int(a): int(b) for a, b in data.get("object_action", [])}
        table = {}
        for entry in data.get("table", []):
            m = Morphism.from_json(entry["from"], v)
            table[m.key()] = Morphism.from_json(entry["to"], v)
        return cls(data["kind"], v, action, table, data.get("name", ""))


def _key_json(key: tuple) -> dict:
    return {"domain_rank": key[0], "codomain_rank": key[1], "images": list(key[2])}


def compose_specs(psi: AutomorphismSpec, phi: AutomorphismSpec,
                  morphisms: Iterable[Morphism]) -> AutomorphismSpec:
    """psi after phi, tabulated on ``morphisms``."""
    ranks = set(phi.object_action) | set(psi.object_action)
    action = {r: psi.rank_of(phi.rank_of(r)) for r in ranks}
    return AutomorphismSpec.from_table(phi.variety, ((m, psi(phi(m))) for m in morphisms),
                                       {k: v for k, v in action.items() if k != v},
                                       name=f"{psi.name or psi.kind}.{phi.name or phi.kind}")


def invert_spec(phi: AutomorphismSpec, morphisms: Iterable[Morphism]) -> AutomorphismSpec:
    """phi^-1 tabulated on the phi-images of ``morphisms``."""
    action = {v: k for k, v in phi.object_action.items()}
    return AutomorphismSpec.from_table(phi.variety, ((phi(m), m) for m in morphisms), action,
                                       name=f"({phi.name or phi.kind})^-1")


def is_potential_inner(phi: AutomorphismSpec) -> bool:
    """Phi(A0) is isomorphic to A0; free objects are isomorphic iff ranks agree."""
    return phi.rank_of(1) == 1


# --- bijection families ------------------------------------------------------

@dataclass
class PartialBijection:
    source: FreeObject
    target: FreeObject
    mapping: dict[NormalForm, NormalForm]

    def __post_init__(self):
        if len(set(self.mapping.values())) != len(self.mapping):
            raise ValueError(f"table on {self.source} is not injective")

    def __call__(self, a: NormalForm) -> NormalForm:
        try:
            return self.mapping[a]
        except KeyError:
            raise CoverageGap(f"{a} outside the table on {self.source}") from None

    def get(self, a: NormalForm):
        return self.mapping.get(a)

    def inverse(self) -> "PartialBijection":
        return PartialBijection(self.target, self.source, {b: a for a, b in self.mapping.items()})

    def then(self, other: "PartialBijection") -> "PartialBijection":
        """``other`` after ``self`` on the entries where both are defined."""
        out = {a: other.mapping[b] for a, b in self.mapping.items() if b in other.mapping}
        return PartialBijection(self.source, other.target, out)

    def __len__(self):
        return len(self.mapping)


@dataclass
class BijectionFamily:
    tables: dict[FreeObject, PartialBijection] = field(default_factory=dict)

    def __getitem__(self, A: FreeObject) -> PartialBijection:
        try:
            return self.tables[A]
        except KeyError:
            raise CoverageGap(f"family has no table for {A}") from None

    def __contains__(self, A: FreeObject) -> bool:
        return A in self.tables

    def inverse(self) -> "BijectionFamily":
        return BijectionFamily({t.target: t.inverse() for t in self.tables.values()})

    def then(self, other: "BijectionFamily") -> "BijectionFamily":
        """Objectwise ``other`` after ``self``."""
        return BijectionFamily({A: t.then(other[t.target]) for A, t in self.tables.items()
                                if t.target in other})

    @classmethod
    def from_function(cls, objects: Iterable[FreeObject], bound: int,
                      fn: Callable[[NormalForm], NormalForm]) -> "BijectionFamily":
        return cls({A: PartialBijection(A, A, {a: fn(a) for a in A.elements(bound)})
                    for A in objects})

    def to_json(self) -> dict:
        v = next(iter(self.tables)).variety.tag if self.tables else None
        return {"variety": v, "tables": [
            {"rank": A.rank, "target_rank": t.target.rank,
             "entries": [[a.serialize(), b.serialize()] for a, b in
                         sorted(t.mapping.items(), key=lambda e: e[0].sort_key())]}
            for A, t in sorted(self.tables.items(), key=lambda e: e[0].rank)]}

    @classmethod
    def from_json(cls, data: Mapping) -> "BijectionFamily":
        v = Variety(data["variety"])
        if "rule" in data:
            return rule_family(data["rule"], v, data.get("ranks", [1, 2]), data.get("bound", 4))
        tables = {}
        for t in data["tables"]:
            A = FreeObject(v, int(t["rank"]))
            B = FreeObject(v, int(t.get("target_rank", t["rank"])))
            tables[A] = PartialBijection(A, B, {NormalForm.parse(a, v): NormalForm.parse(b, v)
                                                for a, b in t["entries"]})
        return cls(tables)


CentralFamily = BijectionFamily

RULES = {
    "identity": lambda a: a,
    "reversal": reverse,
    "inversion": inverse,
}


def rule_family(rule: str, v: Variety, ranks: Iterable[int], bound: int) -> BijectionFamily:
    try:
        fn = RULES[rule]
    except KeyError:
        raise ValueError(f"unknown family rule {rule!r}; expected one of {sorted(RULES)}") from None
    return BijectionFamily.from_function([FreeObject(v, r) for r in ranks], bound, fn)


def extract_s(phi: AutomorphismSpec, A: FreeObject, bound: int) -> PartialBijection:
    """s_A(a) = Q(Phi(alpha_a))(x0) for every a of size <= bound."""
    if phi.rank_of(1) != 1:
        raise ValueError("the automorphism does not preserve the rank-1 object")
    table = {a: point(phi(alpha(a, A))) for a in A.elements(bound)}
    return PartialBijection(A, phi.on_object(A), table)


def extract_family(phi: AutomorphismSpec, objects: Iterable[FreeObject], bound: int) -> BijectionFamily:
    return BijectionFamily({A: extract_s(phi, A, bound) for A in objects})


def verify_conjugation(phi: AutomorphismSpec, s: BijectionFamily,
                       sample: Sequence[Morphism]) -> Report:
    """Pointwise check of Q(Phi(nu)) . s_A = s_B . Q(nu) on the tabulated entries."""
    rep = Report(bounds={"morphisms": len(sample)})
    for nu in sample:
        name = f"conjugation {nu}"
        try:
            phinu = phi(nu)
            sA, sB = s[nu.domain], s[nu.codomain]
        except CoverageGap as e:
            rep.add(name, GAP, detail=str(e))
            continue
        checked = missing = 0
        bad = None
        for a, sa in sA.mapping.items():
            rhs = sB.get(apply_direct(nu, a))
            if rhs is None:
                missing += 1
                continue
            checked += 1
            lhs = apply_direct(phinu, sa)
            if lhs != rhs:
                bad = {"morphism": nu.to_json(), "element": a.serialize(),
                       "phi_nu_of_s": lhs.serialize(), "s_of_nu": rhs.serialize()}
                break
        if bad:
            rep.add(name, FAIL, bad)
        elif checked == 0:
            rep.add(name, GAP, detail=f"no entry of s covers nu ({missing} uncovered)")
        else:
            rep.add(name, PASS, detail=f"{checked} entries" + (f", {missing} uncovered" if missing else ""))
    return rep


def central_report(c: BijectionFamily, sample: Sequence[Morphism]) -> Report:
    """c_B . Q(mu) = Q(mu) . c_A on the tabulated entries."""
    rep = Report(bounds={"morphisms": len(sample)})
    for mu in sample:
        name = f"central {mu}"
        try:
            cA, cB = c[mu.domain], c[mu.codomain]
        except CoverageGap as e:
            rep.add(name, GAP, detail=str(e))
            continue
        checked, bad = 0, None
        for a, ca in cA.mapping.items():
            lhs = cB.get(apply_direct(mu, a))
            if lhs is None:
                continue
            checked += 1
            rhs = apply_direct(mu, ca)
            if lhs != rhs:
                bad = {"morphism": mu.to_json(), "element": a.serialize(),
                       "c_of_mu": lhs.serialize(), "mu_of_c": rhs.serialize()}
                break
        if bad:
            rep.add(name, FAIL, bad)
        else:
            rep.add(name, PASS if checked else GAP, detail=f"{checked} entries")
    return rep


def check_central(c: BijectionFamily, sample: Sequence[Morphism]) -> bool:
    return central_report(c, sample).ok


def check_functor(phi: AutomorphismSpec, pairs: Sequence[tuple[Morphism, Morphism]]) -> bool:
    """Phi(id) = id and Phi(g . f) = Phi(g) . Phi(f) on every sampled (g, f)."""
    for g, f in pairs:
        for A in (f.domain, f.codomain, g.codomain):
            if phi(identity(A)) != identity(phi.on_object(A)):
                return False
        if phi(compose(g, f)) != compose(phi(g), phi(f)):
            return False
    return True


# --- the derived algebra of an automorphism ----------------------------------

def _basic(op: str, k: int) -> Term:
    return app(op, *(var(i) for i in range(1, k + 1)))


def _apply_basic(v: Variety, op: str, args: Sequence[NormalForm]) -> NormalForm:
    if op == "mul":
        return multiply(*args)
    if op == "inv":
        return inverse(args[0])
    if op == "unit":
        return unit()
    raise ValueError(f"no operation {op!r} in {v}")


def _check_fixes_generators(phi: AutomorphismSpec, A: FreeObject) -> None:
    if phi.rank_of(1) != 1 or phi.on_object(A) != A:
        raise ValueError(f"the automorphism must fix the rank-1 object and {A}")
    if A.rank < A.variety.signature.max_arity:
        raise ValueError(f"{A} has fewer generators than the maximal arity")
    for x in A.generators:
        if phi(alpha(x, A)) != alpha(x, A):
            raise ValueError(f"the automorphism moves the point morphism of {x}")


def derived_assignment(phi: AutomorphismSpec, A: FreeObject) -> TermAssignment:
    """omega^Phi(x1..xk) = s_A(omega(x1..xk)) for every basic operation."""
    _check_fixes_generators(phi, A)
    out = {}
    for op, k in A.variety.signature.operations:
        u = normalize(_basic(op, k), A.variety)
        out[op] = point(phi(alpha(u, A))).to_term()
    return out


def derived_equals_star(phi: AutomorphismSpec, A: FreeObject, bound: int) -> Report:
    """Check s(omega(s^-1 a1, .., s^-1 ak)) = omega^Phi(a1, .., ak) on all
    argument tuples of size <= bound."""
    v = A.variety
    assignment = derived_assignment(phi, A)
    d = build_derived_algebra(v, assignment)
    r = max(v.signature.max_arity, 1)
    s = extract_s(phi, A, r * bound)
    s_inv = s.inverse()
    args_pool = A.elements(bound)
    rep = Report(bounds={"rank": A.rank, "argument_size": bound, "s_table_size": r * bound},
                 extra={"assignment": render_assignment(assignment)})
    for op, k in v.signature.operations:
        checked = missing = 0
        bad = None
        for args in product(args_pool, repeat=k):
            pre = [s_inv.get(a) for a in args]
            if any(p is None for p in pre):
                missing += 1
                continue
            star = s.get(_apply_basic(v, op, pre))
            if star is None:
                missing += 1
                continue
            checked += 1
            derived = derived_apply(d, op, args)
            if star != derived:
                bad = {"op": op, "args": [a.serialize() for a in args],
                       "star": star.serialize(), "derived": derived.serialize()}
                break
        name = f"{op}* = {op}^Phi"
        if bad:
            rep.add(name, FAIL, bad)
        elif checked == 0:
            rep.add(name, GAP, detail=f"{missing} tuples uncovered")
        else:
            rep.add(name, PASS, detail=f"{checked} tuples" + (f", {missing} uncovered" if missing else ""))
    return rep


# --- inner-ness via central functions ----------------------------------------

INNER_WITNESS, NOT_INNER, INCONCLUSIVE = "inner_witness", "not_inner_up_to_bound", "inconclusive"


@dataclass
class InnerVerdict:
    verdict: str
    witness: dict | None
    bound: int
    candidates: int
    rejected: list[dict] = field(default_factory=list)
    reason: str = ""

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness,
                "bounds": {"central_term_size": self.bound}, "candidates": self.candidates,
                "rejected": self.rejected, "reason": self.reason}


def _candidate_family(v: Variety, u: Term, perm: tuple[int, ...]) -> Callable[[FreeObject, NormalForm], NormalForm]:
    n = len(perm)
    relabel = {i + 1: normalize(var(p), v) for i, p in enumerate(perm)}

    def c(A: FreeObject, a: NormalForm) -> NormalForm:
        if A.rank == n and n > 1:
            a = evaluate(a.to_term(), v, relabel)
        return evaluate(u, v, {1: a})
    return c


def decide_inner_via_central(phi: AutomorphismSpec, s: BijectionFamily, assignment: Mapping[str, Term],
                             bound: int, rank: int | None = None, sample_size: int = 3,
                             morphisms: int = 40, seed: int = 0,
                             cap: int = DEFAULT_CAP) -> InnerVerdict:
    """Search central families c (unary term operations, optionally after a
    generator permutation) with c an isomorphism of Phi(A) onto A*.

    ``s`` must already pass :func:`verify_conjugation`; it is used to confirm
    that the resulting family tau = c^-1 . s conjugates Phi.  Candidates are
    checked on elements of size <= ``sample_size`` and on seeded random
    morphisms between the rank-1 object and the rank-``rank`` object.
    """
    v = phi.variety
    rank = rank or max(2, v.signature.max_arity)
    A0, A = FreeObject(v, 1), FreeObject(v, rank)
    d = build_derived_algebra(v, assignment)
    rng = random.Random(seed)
    sample = [random_morphism(X, Y, 2, rng) for _ in range(morphisms // 4)
              for X, Y in ((A0, A), (A, A), (A, A0), (A0, A0))]
    try:
        terms = candidate_terms(v, 1, bound, cap=cap)
    except CapExceeded as e:
        return InnerVerdict(INCONCLUSIVE, None, bound, 0, reason=str(e))
    perms = list(permutations(range(1, rank + 1)))
    if len(terms) * len(perms) > cap:
        return InnerVerdict(INCONCLUSIVE, None, bound, 0, reason="candidate cap exceeded")
    els = {X: X.elements(sample_size) for X in (A0, A)}
    wide = {X: set(X.elements(sample_size + 2)) for X in (A0, A)}
    rejected = []
    for u in terms:
        for perm in perms:
            c = _candidate_family(v, u, perm)
            label = {"term": render(u), "generator_permutation": list(perm)}
            reason = _reject(c, d, els, wide, sample, A, s)
            if reason is None:
                return InnerVerdict(INNER_WITNESS, label, bound, len(terms) * len(perms), rejected)
            rejected.append({**label, "reason": reason})
    return InnerVerdict(NOT_INNER, None, bound, len(terms) * len(perms), rejected,
                        reason="no term-definable central isomorphism onto the derived algebra")


def _reject(c, d, els, wide, sample, A, s) -> str | None:
    # bijectivity (bounded): injective on the sample, every generator has a preimage
    for X, pool in els.items():
        vals = [c(X, a) for a in pool]
        if len(set(vals)) != len(vals):
            return f"not injective on {X}"
        for x in X.generators:
            if not any(c(X, b) == x for b in wide[X]):
                return f"{x} has no preimage of size <= {max(b.size for b in wide[X])} in {X}"
    for mu in sample:
        for a in els[mu.domain]:
            if c(mu.codomain, apply_direct(mu, a)) != apply_direct(mu, c(mu.domain, a)):
                return f"not central: fails on {mu} at {a}"
    v = d.base
    for op, k in v.signature.operations:
        for args in product(els[A], repeat=k):
            lhs = c(A, _apply_basic(v, op, args))
            rhs = derived_apply(d, op, [c(A, a) for a in args])
            if lhs != rhs:
                return f"not an isomorphism onto the derived algebra: {op} at {[str(a) for a in args]}"
    # tau = c^-1 . s must be a homomorphism of A
    if A in s and "mul" in v.signature:
        sA = s[A]
        inv_c = {c(A, b): b for b in wide[A]}
        for a, b in product(els[A], repeat=2):
            ab = multiply(a, b)
            if not all(x in sA.mapping for x in (a, b, ab)):
                continue
            ta, tb, tab = (inv_c.get(sA(x)) for x in (a, b, ab))
            if None not in (ta, tb, tab) and multiply(ta, tb) != tab:
                return "c^-1 . s is not a homomorphism"
    return None


# --- reduction theorem conditions --------------------------------------------

@dataclass(frozen=True)
class ReductionScenario:
    F0: FreeObject
    Fsup0: FreeObject
    nu0: Morphism
    bound: int

    @classmethod
    def standard(cls, v: Variety, rank: int = 2, bound: int = 2) -> "ReductionScenario":
        F0, F = FreeObject(v, 1), FreeObject(v, rank)
        x0 = F0.generator(1)
        return cls(F0, F, Morphism(F, F0, (x0,) * rank), bound)

    def __post_init__(self):
        if self.F0.rank != 1:
            raise ValueError("F0 must have rank 1")
        if any(a != self.F0.generator(1) for a in self.nu0.images):
            raise ValueError("nu0 must send every generator to x0")


def reduction_check(phi: AutomorphismSpec, sc: ReductionScenario) -> Report:
    rep = Report(bounds={"hom_size": sc.bound, "rank": sc.Fsup0.rank})
    ranks = sorted({1, sc.Fsup0.rank} | set(phi.object_action))
    moved = {r: phi.rank_of(r) for r in ranks if phi.rank_of(r) != r}
    rep.add("1) objects unchanged", FAIL if moved else PASS,
            {"moved_ranks": moved} if moved else None)

    def fixes(ms, name):
        try:
            for m in ms:
                if phi(m) != m:
                    return rep.add(name, FAIL, {"morphism": m.to_json(), "image": phi(m).to_json()})
        except CoverageGap as e:
            return rep.add(name, GAP, detail=str(e))
        return rep.add(name, PASS, detail=f"{len(ms)} morphisms")

    ends = hom_set(sc.Fsup0, sc.Fsup0, sc.bound)
    fixes(ends, "2) identity on END(F^0)")
    fixes([sc.nu0], "3) preserves nu0")
    if all(c.status == PASS for c in rep.checks):
        mus = hom_set(sc.F0, sc.Fsup0, sc.bound)
        bad = None
        try:
            for mu in mus:
                pm = phi(mu)
                if compose(mu, sc.nu0) != compose(pm, sc.nu0) or pm != mu:
                    bad = {"morphism": mu.to_json(), "image": pm.to_json()}
                    break
            rep.add("conclusion: Phi fixes Hom(F0, F^0)", FAIL if bad else PASS, bad,
                    detail=f"{len(mus)} morphisms")
        except CoverageGap as e:
            rep.add("conclusion: Phi fixes Hom(F0, F^0)", GAP, detail=str(e))
    else:
        rep.add("conclusion: Phi fixes Hom(F0, F^0)", SKIPPED, detail="some condition does not hold")
    return rep
