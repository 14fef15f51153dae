"""Command-line front end.

Exit codes: 0 all checks passed / search completed, 1 a check failed,
2 usage or input error, 3 inconclusive because a bound or cap was hit.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

import yaml

from . import finite
from .automorphisms import (INCONCLUSIVE, INNER_WITNESS, AutomorphismSpec, BijectionFamily,
                            CoverageGap, ReductionScenario, check_functor, compose_specs,
                            decide_inner_via_central, derived_assignment, derived_equals_star,
                            extract_family, extract_s, invert_spec, is_potential_inner,
                            reduction_check, verify_conjugation)
from .category import FreeObject, compose, hom_set, random_morphism
from .derived import render_assignment, solve_term_equations
from .formats import dump_json, load_family, load_signature, load_spec, load_system
from .reports import FAIL, GAP, PASS, Report
from .terms import CapExceeded, TermError, enumerate_terms, render
from .varieties import TAGS, Variety, equal_in_free, normalize

log = logging.getLogger("catauto")

OK, FAILED, USAGE, INCONCLUSIVE_EXIT = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    print(dump_json(payload) if args.json else text)


def _report_exit(rep: Report) -> int:
    return {PASS: OK, FAIL: FAILED, GAP: INCONCLUSIVE_EXIT}[rep.status]


# --- oracle ------------------------------------------------------------------

def cmd_oracle(args) -> int:
    if args.action == "munn":
        v = Variety("inverse_semigroup")
        nf = normalize(v.parse(args.terms[0]), v)
        word = " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in nf.letters())
        _emit(args, {"term": args.terms[0], "munn": nf.serialize(), "word": word, "size": nf.size},
              f"{nf.serialize()}\nword: {word}")
        return OK
    v = Variety(args.variety)
    if args.action == "normalize":
        nf = normalize(v.parse(args.terms[0]), v)
        _emit(args, {"variety": v.tag, "term": args.terms[0], "normal_form": nf.serialize()},
              nf.serialize())
        return OK
    if len(args.terms) != 2:
        raise ValueError("oracle eq takes exactly two terms")
    t1, t2 = (v.parse(t) for t in args.terms)
    eq = equal_in_free(t1, t2, v)
    _emit(args, {"variety": v.tag, "lhs": args.terms[0], "rhs": args.terms[1], "equal": eq,
                 "normal_forms": [normalize(t1, v).serialize(), normalize(t2, v).serialize()]},
          "equal" if eq else "not equal")
    return OK if eq else FAILED


# --- terms -------------------------------------------------------------------

def cmd_terms(args) -> int:
    sig = load_signature(args.sig) if args.sig else Variety(args.variety).signature
    vars_ = [int(x) for x in args.vars.split(",") if x.strip()]
    ts = enumerate_terms(sig, vars_, args.max_size, args.cap)
    _emit(args, {"bounds": {"max_size": args.max_size}, "count": len(ts),
                 "terms": [render(t) for t in ts]},
          "\n".join(render(t) for t in ts) + f"\n# {len(ts)} terms of size <= {args.max_size}")
    return OK


# --- solve -------------------------------------------------------------------

def cmd_solve(args) -> int:
    results = []
    for path in args.system:
        sys_ = load_system(path)
        sols = solve_term_equations(sys_, args.max_size, args.cap, not args.all_representatives)
        results.append({"system": sys_.name, "file": str(path), "variety": sys_.base.tag,
                        "note": sys_.note, "complete_up_to": args.max_size,
                        "solutions": [render_assignment(a) for a in sols]})
    payload = {"bounds": {"max_size": args.max_size, "cap": args.cap,
                          "distinct_values": not args.all_representatives},
               "results": results}
    lines = []
    for r in results:
        lines.append(f"{r['system']} ({r['variety']}), complete up to size {args.max_size}: "
                     f"{len(r['solutions'])} solution(s)")
        for s in r["solutions"]:
            lines.append("  " + ", ".join(f"{k} -> {v}" for k, v in s.items()))
    _emit(args, payload, "\n".join(lines))
    return OK


# --- derive / category / auto ------------------------------------------------

def cmd_derive(args) -> int:
    phi = load_spec(args.spec)
    A = FreeObject(phi.variety, args.rank)
    rep = derived_equals_star(phi, A, args.bound)
    _emit(args, rep.to_json(), f"assignment: {rep.extra['assignment']}\n" + rep.to_text())
    return _report_exit(rep)


def _sample(v: Variety, ranks, count: int, max_size: int, rng: random.Random):
    objs = [FreeObject(v, r) for r in ranks]
    return [random_morphism(rng.choice(objs), rng.choice(objs), max_size, rng) for _ in range(count)]


def cmd_category(args) -> int:
    phi = load_spec(args.spec)
    v = phi.variety
    rng = random.Random(args.seed)
    ranks = sorted({1, args.rank})
    objs = [FreeObject(v, r) for r in ranks]
    rep = Report(bounds={"s_table_size": args.bound, "morphism_image_size": args.image_size,
                         "samples": args.samples, "seed": args.seed})

    sample = _sample(v, ranks, args.samples, args.image_size, rng)
    pairs = []
    for f in sample:
        g = random_morphism(f.codomain, rng.choice(objs), args.image_size, rng)
        pairs.append((g, f))
    try:
        rep.add("functor laws", PASS if check_functor(phi, pairs) else FAIL,
                detail=f"{len(pairs)} composable pairs")
    except CoverageGap as e:
        rep.add("functor laws", GAP, detail=str(e))

    try:
        s = extract_family(phi, objs, args.bound)
    except CoverageGap as e:
        rep.add("extract s", GAP, detail=str(e))
        _emit(args, rep.to_json(), rep.to_text())
        return _report_exit(rep)
    family = load_family(args.family) if args.family else s
    conj = verify_conjugation(phi, family, sample)
    bad = conj.failed
    rep.add("conjugation law", FAIL if bad else (GAP if not any(c.status == PASS for c in conj.checks) else PASS),
            bad[0].counterexample if bad else None,
            detail=f"{sum(c.status == PASS for c in conj.checks)} of {len(sample)} morphisms passed")

    ident = extract_family(AutomorphismSpec.identity(v), objs, args.bound)
    rep.add("s^Id = 1", PASS if all(t.mapping == {a: a for a in t.mapping} for t in ident.tables.values())
            else FAIL)
    homs = [m for A in objs for B in objs for m in hom_set(A, B, args.bound) if A.rank == 1]
    try:
        inv = invert_spec(phi, homs)
        s_inv = extract_family(inv, objs, args.bound)
        expected = s.inverse()
        rep.add("s^(Phi^-1) = (s^Phi)^-1",
                PASS if all(s_inv[A].mapping == expected[A].mapping for A in objs) else FAIL)
        twice = compose_specs(phi, phi, homs)
        s2 = extract_family(twice, objs, args.bound)
        rep.add("s^(Phi.Phi) = s^Phi . s^Phi",
                PASS if all(s2[A].mapping == s.then(s)[A].mapping for A in objs) else FAIL)
    except CoverageGap as e:
        rep.add("s-family laws", GAP, detail=str(e))
    rep.extra["potential_inner"] = is_potential_inner(phi)
    _emit(args, rep.to_json(), rep.to_text())
    return _report_exit(rep)


def cmd_auto(args) -> int:
    phi = load_spec(args.spec)
    v = phi.variety
    if args.action == "reduction":
        rep = reduction_check(phi, ReductionScenario.standard(v, args.rank, args.bound or 2))
        _emit(args, rep.to_json(), rep.to_text())
        return _report_exit(rep)
    A = FreeObject(v, args.rank)
    assignment = derived_assignment(phi, A)
    s = extract_family(phi, [FreeObject(v, 1), A], args.s_bound)
    verdict = decide_inner_via_central(phi, s, assignment, args.bound or 7, rank=args.rank,
                                       seed=args.seed, cap=args.cap)
    payload = {**verdict.to_json(), "assignment": render_assignment(assignment),
               "potential_inner": is_potential_inner(phi)}
    text = f"{verdict.verdict}" + (f" (c = {verdict.witness['term']})" if verdict.witness else "")
    text += f"\nderived operations: {render_assignment(assignment)}\n{verdict.reason}"
    _emit(args, payload, text.rstrip())
    if verdict.verdict == INNER_WITNESS:
        return OK
    return INCONCLUSIVE_EXIT if verdict.verdict == INCONCLUSIVE else FAILED


# --- indicator / monoid ------------------------------------------------------

def cmd_indicator(args) -> int:
    A0 = finite.load_table(args.a0)
    universe = finite.load_universe(args.universe)
    check = finite.is_right_indicator if args.side == "right" else finite.is_left_indicator
    res = check(A0, universe, args.max_carrier)
    text = f"{args.side} indicator: {'true' if res.holds else 'false'}"
    if res.certificate:
        text += f"\ncertificate: {res.certificate}"
    _emit(args, {"side": args.side, "a0": str(args.a0), "universe_size": len(universe),
                 "bounds": {"max_carrier": args.max_carrier}, **res.to_json()}, text)
    return OK if res.holds else FAILED


def cmd_monoid(args) -> int:
    M = finite.transformation_monoid(args.n, args.partial, args.max_n)
    if args.action == "build":
        text = finite.format_table(M)
        if args.out:
            Path(args.out).write_text(text)
        _emit(args, {"monoid": M.name, "size": M.size,
                     "elements": [list(f) for f in M.labels]}, text.rstrip())
        return OK
    verdict = finite.check_automorphisms_inner(M, args.n, args.partial, args.cap)
    text = (f"{M.name}: {len(verdict.automorphisms)} automorphisms, "
            f"all inner: {verdict.all_inner}\nwitnesses: {verdict.witnesses}")
    if verdict.delta_checks:
        text += f"\npartial identities: {verdict.delta_checks}"
    _emit(args, verdict.to_json(), text)
    return OK if verdict.all_inner else FAILED


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=10**6, help="enumeration budget")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="catauto", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("oracle", parents=[common], help="decide equality in free algebras")
    o.add_argument("action", choices=["eq", "normalize", "munn"])
    o.add_argument("terms", nargs="+")
    o.add_argument("--variety", choices=TAGS, default="semigroup")
    o.set_defaults(func=cmd_oracle)

    t = sub.add_parser("terms", parents=[common], help="bounded term enumeration")
    t.add_argument("action", choices=["enumerate"])
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--variety", choices=TAGS)
    g.add_argument("--sig", type=Path, help="YAML signature file")
    t.add_argument("--vars", default="1")
    t.add_argument("--max-size", type=_positive, required=True)
    t.set_defaults(func=cmd_terms)

    s = sub.add_parser("solve", parents=[common], help="solve term equation systems")
    s.add_argument("--system", type=Path, action="append", required=True)
    s.add_argument("--max-size", type=_positive, required=True)
    s.add_argument("--all-representatives", action="store_true",
                   help="keep every term, not one per free-algebra value")
    s.set_defaults(func=cmd_solve)

    d = sub.add_parser("derive", parents=[common], help="check A* = A^Phi")
    d.add_argument("action", choices=["check"])
    d.add_argument("--spec", type=Path, required=True)
    d.add_argument("--rank", type=_positive, default=2)
    d.add_argument("--bound", type=_positive, default=3)
    d.set_defaults(func=cmd_derive)

    c = sub.add_parser("category", parents=[common], help="functor, conjugation and s-family laws")
    c.add_argument("action", choices=["verify"])
    c.add_argument("--spec", type=Path, required=True)
    c.add_argument("--family", type=Path, help="bijection family JSON (default: extracted s)")
    c.add_argument("--rank", type=_positive, default=2)
    c.add_argument("--bound", type=_positive, default=5, help="size bound for s tables")
    c.add_argument("--image-size", type=_positive, default=2)
    c.add_argument("--samples", type=_positive, default=200)
    c.set_defaults(func=cmd_category)

    a = sub.add_parser("auto", parents=[common], help="inner-ness and reduction checks")
    a.add_argument("action", choices=["inner", "reduction"])
    a.add_argument("--spec", type=Path, required=True)
    a.add_argument("--rank", type=_positive, default=2)
    a.add_argument("--bound", type=_positive,
                   help="central candidate term size (inner, default 7) or "
                        "endomorphism image size (reduction, default 2)")
    a.add_argument("--s-bound", type=_positive, default=4)
    a.set_defaults(func=cmd_auto)

    i = sub.add_parser("indicator", parents=[common], help="brute-force indicator checks")
    i.add_argument("side", choices=["right", "left"])
    i.add_argument("--a0", type=Path, required=True)
    i.add_argument("--universe", type=Path, nargs="+", required=True,
                   help=".tbl files or directories of them")
    i.add_argument("--max-carrier", type=_positive, default=finite.MAX_INDICATOR_CARRIER)
    i.set_defaults(func=cmd_indicator)

    m = sub.add_parser("monoid", parents=[common], help="transformation monoids")
    m.add_argument("action", choices=["build", "aut-check"])
    m.add_argument("--n", type=_positive, required=True)
    m.add_argument("--partial", action="store_true")
    m.add_argument("--max-n", type=_positive, help="override the size cap")
    m.add_argument("--out", type=Path)
    m.set_defaults(func=cmd_monoid)
    return p


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (CapExceeded, CoverageGap) as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return INCONCLUSIVE_EXIT
    except (TermError, ValueError, KeyError, OSError, yaml.YAMLError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())
