from math import comb

import pytest
from hypothesis import given, strategies as st

from catauto.terms import (App, ArityMismatch, CapExceeded, Signature, TermSyntaxError,
                           UnknownOperation, app, compose_substitutions, enumerate_terms,
                           leaves, parse_term, render, size, sort_key, substitute, var,
                           variables)

from strategies import terms

MUL = Signature.of(mul=2)
MUL_INV = Signature.of(mul=2, inv=1)
x1, x2, x3 = var(1), var(2), var(3)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def test_parse_examples():
    assert parse_term("(mul x1 x2)", MUL) == app("mul", x1, x2)
    assert parse_term("(inv (mul x1 x1))", MUL_INV) == app("inv", app("mul", x1, x1))
    with pytest.raises(ArityMismatch):
        parse_term("(mul x1)", MUL)


def test_parse_nullary_and_errors():
    sig = Signature.of(mul=2, unit=0)
    assert parse_term("(mul unit x1)", sig) == app("mul", app("unit"), x1)
    with pytest.raises(UnknownOperation):
        parse_term("(foo x1)", MUL)
    with pytest.raises(TermSyntaxError) as e:
        parse_term("(mul x1 x2", MUL)
    assert e.value.pos is not None
    with pytest.raises(TermSyntaxError):
        parse_term("(mul x1 x2) x1", MUL)
    with pytest.raises(TermSyntaxError):
        parse_term("x0", MUL)


def test_substitute_examples():
    assert substitute(app("mul", x1, x2), {1: x2, 2: x1}) == app("mul", x2, x1)
    assert substitute(x1, {1: app("mul", x1, x1)}) == app("mul", x1, x1)
    assert substitute(app("mul", x1, x3), {1: x2}) == app("mul", x2, x3)


def test_enumerate_examples():
    got = enumerate_terms(MUL, [1], 5)
    assert set(got) == {x1, app("mul", x1, x1), app("mul", x1, app("mul", x1, x1)),
                        app("mul", app("mul", x1, x1), x1)}
    assert set(enumerate_terms(MUL, [1, 2], 1)) == {x1, x2}
    inv = Signature.of(inv=1)
    assert set(enumerate_terms(inv, [1], 3)) == {x1, app("inv", x1), app("inv", app("inv", x1))}


@pytest.mark.parametrize("n", range(1, 7))
def test_binary_counts_follow_catalan(n):
    # binary trees with n leaves over k variables: Catalan(n-1) * k^n
    ts = enumerate_terms(MUL, [1, 2], 2 * n - 1)
    assert sum(1 for t in ts if len(leaves(t)) == n) == catalan(n - 1) * 2 ** n


def test_enumeration_order_and_uniqueness():
    ts = enumerate_terms(MUL_INV, [1, 2], 6)
    assert len(set(ts)) == len(ts)
    assert [sort_key(t) for t in ts] == sorted(sort_key(t) for t in ts)
    assert all(size(t) <= 6 for t in ts)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_terms(MUL, [1, 2, 3], 11, cap=1000)


@given(terms({"mul": 2, "inv": 1}))
def test_render_parse_roundtrip(t):
    assert parse_term(render(t), MUL_INV) == t


@given(terms({"mul": 2}), st.dictionaries(st.integers(1, 2), terms({"mul": 2}), max_size=2))
def test_identity_substitution_and_size(t, s):
    assert substitute(t, {}) == t
    assert substitute(t, {i: var(i) for i in variables(t)}) == t
    u = substitute(t, s)
    assert size(u) == sum(size(s.get(i, var(i))) for i in leaves(t)) + size(t) - len(leaves(t))


@given(terms({"mul": 2}), st.dictionaries(st.integers(1, 3), terms({"mul": 2}, 3), max_size=3),
       st.dictionaries(st.integers(1, 3), terms({"mul": 2}, 3), max_size=3))
def test_substitution_composition(t, s1, s2):
    assert substitute(substitute(t, s1), s2) == substitute(t, compose_substitutions(s2, s1))


def test_app_is_hashable_and_frozen():
    t = app("mul", x1, x2)
    assert {t: 1}[app("mul", x1, x2)] == 1
    assert isinstance(t, App)
    with pytest.raises(Exception):
        t.op = "inv"
