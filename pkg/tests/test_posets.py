from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sagbi_forge.errors import DomainError
from sagbi_forge.groebner import Ideal, ideals_equal
from sagbi_forge.poly import format_polynomial
from sagbi_forge.posets import (
    Poset, antichain, antichain_of_ideal, build_pi, chain, encode_ideals_B, enumerate_ideals,
    generated_ideal, hibi_generators, hibi_toric_gens, hibi_z_table, ideal_from_antichain,
    ideal_intersection, ideal_roster, ideal_union, indicator, is_graded, maximal_chains,
)
from sagbi_forge.toric import toric_ideal

PAIRS = [(a, b) for a in range(2, 6) for b in range(a, 6)]


def brute_force_ideals(P):
    out = set()
    for k in range(len(P) + 1):
        for sub in combinations(P.elements, k):
            s = set(sub)
            if all(y in s for x in s for y in P.elements if P.less(y, x)):
                out.add(frozenset(s))
    return out


class TestPoset:
    def test_rejects_cycle(self):
        with pytest.raises(ValueError):
            Poset(("a", "b"), frozenset({("a", "b"), ("b", "a")}))

    def test_rejects_implied_cover(self):
        with pytest.raises(ValueError):
            Poset(("a", "b", "c"), frozenset({("a", "b"), ("b", "c"), ("a", "c")}))

    def test_from_relations_reduces(self):
        P = Poset.from_relations(("a", "b", "c"), [("a", "b"), ("b", "c"), ("a", "c")])
        assert P.covers == frozenset({("a", "b"), ("b", "c")})

    def test_json_round_trip(self):
        P = build_pi(3, 4)
        assert Poset.from_json(P.to_json()) == P


class TestBuildPi:
    def test_22(self):
        P = build_pi(2, 2)
        assert P.elements == ("e1", "fp1", "f2")
        assert P.covers == frozenset({("e1", "fp1"), ("f2", "fp1")})

    @pytest.mark.parametrize("b", range(2, 7))
    def test_size_a2(self, b):
        assert len(build_pi(2, b)) == 2 * b - 1

    def test_33(self):
        P = build_pi(3, 3)
        assert len(P) == 7
        assert len(enumerate_ideals(P)) == 18

    @pytest.mark.parametrize("a,b", [(1, 3), (3, 2), (0, 0)])
    def test_domain(self, a, b):
        with pytest.raises(DomainError):
            build_pi(a, b)


class TestIdeals:
    def test_antichain(self):
        assert len(enumerate_ideals(antichain(2))) == 4

    def test_pi22(self):
        got = [set(i) for i in enumerate_ideals(build_pi(2, 2))]
        assert got == [set(), {"e1"}, {"f2"}, {"e1", "f2"}, {"e1", "f2", "fp1"}]

    @pytest.mark.parametrize("n", range(0, 6))
    def test_chain(self, n):
        assert len(enumerate_ideals(chain(n))) == n + 1

    @pytest.mark.parametrize("a,b", PAIRS)
    def test_count_and_oracle(self, a, b):
        P = build_pi(a, b)
        ideals = enumerate_ideals(P)
        assert set(ideals) == brute_force_ideals(P)
        assert len(ideals) == len(set(ideals)) == a * b + comb(a, 2) * comb(b, 2)

    @pytest.mark.parametrize("a,b", PAIRS)
    def test_roster_matches(self, a, b):
        P = build_pi(a, b)
        assert {i for _, i in ideal_roster(a, b)} == set(enumerate_ideals(P))

    def test_union_formula(self):
        P = build_pi(3, 3)
        I = generated_ideal(P, ["e1", "f3"])
        J = generated_ideal(P, ["e2", "f2"])
        assert ideal_union(I, J) == I
        assert ideal_intersection(I, J) == J

    def test_trivial_lattice_ops(self):
        P = build_pi(3, 4)
        for I in enumerate_ideals(P):
            assert ideal_union(I, frozenset()) == I
            assert ideal_intersection(I, I) == I


class TestAntichains:
    def test_empty(self):
        P = build_pi(2, 2)
        assert ideal_from_antichain(P, []) == frozenset()
        assert antichain_of_ideal(P, frozenset()) == frozenset()

    def test_top(self):
        P = build_pi(2, 2)
        assert ideal_from_antichain(P, ["fp1"]) == {"e1", "f2", "fp1"}

    @pytest.mark.parametrize("a,b", PAIRS)
    def test_round_trip(self, a, b):
        P = build_pi(a, b)
        for I in enumerate_ideals(P):
            assert ideal_from_antichain(P, antichain_of_ideal(P, I)) == I

    def test_not_antichain(self):
        with pytest.raises(ValueError):
            ideal_from_antichain(build_pi(2, 2), ["e1", "fp1"])


class TestHibi:
    def test_empty_ideal(self):
        assert format_polynomial(hibi_generators(build_pi(2, 2))[0]) == "x4"

    def test_pi22(self):
        gens = hibi_generators(build_pi(2, 2))
        assert len(gens) == 5 and gens[0].table.count == 4

    def test_antichain(self):
        assert [format_polynomial(g) for g in hibi_generators(antichain(2))] == [
            "x3", "x1*x3", "x2*x3", "x1*x2*x3"]

    def test_chain_no_relations(self):
        assert hibi_toric_gens(chain(4)) == []

    def test_pi22_relation(self):
        (g,) = hibi_toric_gens(build_pi(2, 2))
        assert format_polynomial(g) == "-z()*z(e1,f2) + z(e1)*z(f2)"

    @pytest.mark.parametrize("ab", [(2, 2), (2, 3), (3, 3)])
    def test_equals_toric_of_B(self, ab):
        P = build_pi(*ab)
        B = encode_ideals_B(*ab)
        table = hibi_z_table(P)
        assert table.names == B.labels
        I = Ideal(table, tuple(hibi_toric_gens(P)))
        # B contains the origin; the Hibi ring carries the extra homogenizing coordinate
        assert ideals_equal(I, toric_ideal(B.homogenized()))
        assert not ideals_equal(I, toric_ideal(B))

    @pytest.mark.parametrize("ab", [(2, 3), (3, 4)])
    def test_relations_vanish(self, ab):
        P = build_pi(*ab)
        gens = hibi_generators(P)
        for g in hibi_toric_gens(P):
            assert g.substitute(gens, gens[0].table).is_zero()


class TestGraded:
    def test_a2(self):
        assert is_graded(build_pi(2, 5))
        assert {len(c) for c in maximal_chains(build_pi(2, 5))} == {5}

    def test_34(self):
        P = build_pi(3, 4)
        assert not is_graded(P)
        chains = set(maximal_chains(P))
        assert ("e2", "e1", "ep2") in chains
        assert ("e2", "fp1", "fp2", "fp3") in chains

    def test_33(self):
        assert is_graded(build_pi(3, 3))

    @pytest.mark.parametrize("a,b", [(a, b) for a in range(2, 7) for b in range(a, 7)])
    def test_criterion(self, a, b):
        assert is_graded(build_pi(a, b)) == (a == 2 or a == b)


class TestEncodeB:
    def test_empty_is_origin(self):
        B = encode_ideals_B(2, 2)
        assert B.points[0] == (0, 0, 0)

    def test_top_ideal(self):
        P = build_pi(2, 2)
        assert indicator(P, {"e1", "f2", "fp1"}) == (1, 1, 1)

    @pytest.mark.parametrize("a,b", PAIRS)
    def test_count(self, a, b):
        assert len(encode_ideals_B(a, b)) == a * b + comb(a, 2) * comb(b, 2)


@given(st.integers(2, 4).flatmap(lambda a: st.tuples(st.just(a), st.integers(a, 5))), st.data())
def test_distributive(ab, data):
    ideals = enumerate_ideals(build_pi(*ab))
    I, J, K = (data.draw(st.sampled_from(ideals)) for _ in range(3))
    assert ideal_intersection(ideal_union(I, J), K) == ideal_union(
        ideal_intersection(I, K), ideal_intersection(J, K))
    assert ideal_union(I, J) in ideals and ideal_intersection(I, J) in ideals
