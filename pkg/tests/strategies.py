"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from catauto.terms import app, var


def terms(ops, nvars=2, max_leaves=6):
    """Random terms over ``ops`` ({name: arity}) with variables x1..x_nvars."""
    leaf = st.integers(1, nvars).map(var)
    nullary = [app(n) for n, k in ops.items() if k == 0]
    if nullary:
        leaf = leaf | st.sampled_from(nullary)

    def extend(children):
        out = []
        for name, k in ops.items():
            if k > 0:
                out.append(st.tuples(*[children] * k).map(lambda args, n=name: app(n, *args)))
        return st.one_of(out)

    return st.recursive(leaf, extend, max_leaves=max_leaves)


words = st.lists(st.integers(1, 3), min_size=1, max_size=8)
signed_words = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=10)
