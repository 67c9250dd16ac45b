from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import TABLE3, exps, nonzero_polys, orders, polys
from sagbi_forge.edge_rings import kab_frame
from sagbi_forge.errors import DimensionError, EmptyInputError, ParseError
from sagbi_forge.poly import (
    EQ, GT, LT, Polynomial, VariableTable, build_order_3_1, compare, format_polynomial,
    grlex, initial_form, leading_term, parse_polynomial, weight_vector_w,
)

S22 = VariableTable.sab(2, 2)


def P(text, table=S22):
    return parse_polynomial(text, table)


def e(text, table=S22):
    (exp,) = P(text, table).terms
    return exp


class TestTables:
    def test_sab_ranking(self):
        assert S22.names == ("x1", "x2", "xp1", "xp2", "yp1", "yp2", "y1", "y2")

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            VariableTable(["x", "x"])

    def test_graph_table(self):
        assert VariableTable.graph(3).names == ("x1", "x2", "x3", "y1", "y2", "y3")


class TestParseFormat:
    def test_round_trip(self):
        text = "2*x1*y2^3 - 1/2*xp1 + 7"
        p = P(text)
        assert P(format_polynomial(p)) == p

    def test_implicit_and_whitespace(self):
        assert P(" x1  * y1 - xp1*yp1") == P("x1*y1-xp1*yp1")

    def test_like_terms_cancel(self):
        assert P("x1 - x1").is_zero()

    @pytest.mark.parametrize("bad", ["", "x1 +", "x1^", "q7", "x1 ** 2"])
    def test_parse_errors(self, bad):
        with pytest.raises(ParseError):
            P(bad)

    def test_zero_formats(self):
        assert format_polynomial(Polynomial.zero(S22)) == "0"


class TestCompare:
    order = build_order_3_1(2, 2)

    def test_y1_beats_y2(self):
        assert compare(self.order, e("x1*y1"), e("x1*y2")) == GT

    def test_reflexive(self):
        assert compare(self.order, e("x1*y1"), e("x1*y1")) == EQ

    def test_x1_beats_xp2(self):
        assert compare(self.order, e("x1*y2"), e("xp2*yp1")) == GT
        assert compare(self.order, e("xp2*yp1"), e("x1*y2")) == LT

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            compare(self.order, (1, 0), (1, 0, 0))

    def test_smallest_case(self):
        assert build_order_3_1(1, 1).nvars == 4


class TestLeadingTerm:
    def test_quadric(self):
        fr = kab_frame(3, 3)
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                f = fr.gens.gens[fr.gens.labels.index(f"z{i}_{j}")]
                c, exp = leading_term(fr.order, f)
                assert c == 1 and exp == e(f"x{i}*y{j}", fr.table)

    def test_quartic(self):
        fr = kab_frame(3, 3)
        for lab, f in zip(fr.gens.labels, fr.gens.gens):
            idx = lab[1:].split("_")
            if len(idx) == 4:
                i, ip, jp, j = idx
                assert leading_term(fr.order, f) == (1, e(f"x{i}*xp{jp}*yp{ip}*y{j}", fr.table))

    def test_single_term(self):
        p = P("-3*x2*yp1")
        assert leading_term(grlex(8), p) == (-3, e("x2*yp1"))

    def test_zero_raises(self):
        with pytest.raises(EmptyInputError):
            leading_term(grlex(8), Polynomial.zero(S22))

    def test_f11_any_size(self):
        for a, b in [(1, 1), (2, 5), (4, 3)]:
            fr_table = VariableTable.sab(a, b)
            f = P("x1*y1 - xp1*yp1", fr_table)
            assert leading_term(build_order_3_1(a, b), f)[1] == e("x1*y1", fr_table)


class TestWeights:
    def test_w22(self):
        assert weight_vector_w(2, 2) == (128, 64, 32, 16, 8, 4, 2, 1)

    @pytest.mark.parametrize("a", range(1, 7))
    @pytest.mark.parametrize("b", range(1, 7))
    def test_domination(self, a, b):
        w = weight_vector_w(a, b)
        assert len(w) == 2 * (a + b)
        assert all(w[k] > sum(w[k + 1:]) for k in range(len(w)))

    def test_quartic_initial_form(self):
        fr = kab_frame(2, 2)
        f1212 = fr.gens.gens[-1]
        assert initial_form(weight_vector_w(2, 2), f1212) == P("x1*xp1*yp2*y2")

    @pytest.mark.parametrize("a,b", [(a, b) for a in range(2, 5) for b in range(a, 5)])
    def test_initial_form_is_leading_term(self, a, b):
        fr = kab_frame(a, b)
        w = weight_vector_w(a, b)
        for g in fr.gens.gens:
            c, exp = leading_term(fr.order, g)
            assert initial_form(w, g) == Polynomial(fr.table, {exp: c})


class TestInitialForm:
    def test_relation_initial_form(self):
        fr = kab_frame(2, 2)
        z = fr.rtable
        g = parse_polynomial("z1_1*z2_2 - z1_2*z2_1 - z1_2_1_2", z)
        assert initial_form(fr.z_weights(), g) == parse_polynomial("z1_1*z2_2 - z1_2*z2_1", z)

    def test_monomial(self):
        p = P("5*x1^2*y2")
        assert initial_form((3, 1, 4, 1, 5, 9, 2, 6), p) == p

    def test_zero_weight(self):
        p = P("x1 + y2^3 - 4")
        assert initial_form((0,) * 8, p) == p

    def test_zero_poly(self):
        assert initial_form((1,) * 8, Polynomial.zero(S22)).is_zero()

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            initial_form((1, 2), P("x1"))


class TestArithmetic:
    def test_substitute(self):
        t = VariableTable(["u", "v"])
        p = parse_polynomial("a^2 - b*c", TABLE3)
        images = [parse_polynomial(s, t) for s in ("u + v", "u", "v + 2")]
        assert p.substitute(images, t) == parse_polynomial("u^2 + u*v + v^2 - 2*u", t)

    def test_scalar_ops(self):
        p = parse_polynomial("a + 1", TABLE3)
        assert p * 2 == parse_polynomial("2*a + 2", TABLE3)
        assert 1 - p == parse_polynomial("-a", TABLE3)
        assert p.scale(Fraction(1, 2)) == parse_polynomial("1/2*a + 1/2", TABLE3)

    def test_power(self):
        p = parse_polynomial("a + b", TABLE3)
        assert p ** 3 == p * p * p
        assert (p ** 0) == Polynomial.constant(TABLE3, 1)

    def test_tables_must_match(self):
        with pytest.raises(DimensionError):
            parse_polynomial("a", TABLE3) + parse_polynomial("x1", S22)

    def test_homogeneous(self):
        assert parse_polynomial("a*b - c^2", TABLE3).is_homogeneous()
        assert not parse_polynomial("a*b - c", TABLE3).is_homogeneous()
        assert parse_polynomial("a*b - c", TABLE3).is_homogeneous([1, 1, 2])


# -- properties ----------------------------------------------------------

@given(orders(), exps(3), exps(3), exps(3))
def test_order_axioms(order, u, v, w):
    c = compare(order, u, v)
    assert c == -compare(order, v, u)
    assert (c == EQ) == (u == v)
    uw = tuple(a + b for a, b in zip(u, w))
    vw = tuple(a + b for a, b in zip(v, w))
    assert compare(order, uw, vw) == c
    assert compare(order, u, (0, 0, 0)) in (GT, EQ)


@given(orders(), exps(3), exps(3), exps(3))
def test_order_transitive(order, u, v, w):
    if compare(order, u, v) == GT and compare(order, v, w) == GT:
        assert compare(order, u, w) == GT


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == Polynomial.zero(TABLE3)


@given(orders(), nonzero_polys(), nonzero_polys())
def test_leading_term_multiplicative(order, p, q):
    cp, ep = leading_term(order, p)
    cq, eq = leading_term(order, q)
    assert leading_term(order, p * q) == (cp * cq, tuple(a + b for a, b in zip(ep, eq)))


@given(st.tuples(*[st.integers(0, 6)] * 3), polys(), polys())
def test_initial_form_multiplicative(w, p, q):
    assert initial_form(w, p * q) == initial_form(w, p) * initial_form(w, q)


@given(polys())
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p), TABLE3) == p
