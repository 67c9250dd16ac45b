from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sagbi_forge.poly import Polynomial, VariableTable, block_order, grevlex, grlex, lex, weight_order

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

TABLE3 = VariableTable(["a", "b", "c"])


def exps(n, top=4):
    return st.tuples(*[st.integers(0, top)] * n)


def polys(table=TABLE3, max_terms=4, top=3):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
    return st.dictionaries(exps(table.count, top), coeff, max_size=max_terms).map(
        lambda d: Polynomial(table, d))


def nonzero_polys(table=TABLE3, max_terms=4, top=3):
    return polys(table, max_terms, top).filter(lambda p: not p.is_zero())


@st.composite
def orders(draw, n=3):
    perm = tuple(draw(st.permutations(range(n))))
    kind = draw(st.sampled_from(["lex", "grlex", "grevlex", "weight", "block"]))
    if kind == "lex":
        return lex(n, perm)
    if kind == "grlex":
        return grlex(n, perm)
    if kind == "grevlex":
        return grevlex(n, perm)
    if kind == "weight":
        w = draw(st.tuples(*[st.integers(0, 5)] * n))
        return weight_order(w, grevlex(n, perm))
    cut = draw(st.integers(1, n - 1))
    first, second = list(perm[:cut]), list(perm[cut:])
    return block_order([(first, grlex(len(first))), (second, grevlex(len(second)))])


@pytest.fixture
def frac():
    return Fraction
