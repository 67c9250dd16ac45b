"""Finite posets, their ideals, Hibi rings and the posets Pi_{a,b}."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DomainError
from .poly import Polynomial, VariableTable
from .toric import PointConfiguration

PosetIdeal = frozenset  # a down-closed frozenset of element labels


@dataclass(frozen=True)
class Poset:
    """Elements (in a fixed basis order) and covering pairs ``(lower, upper)``."""

    elements: tuple[str, ...]
    covers: frozenset

    def __post_init__(self):
        elements = tuple(self.elements)
        covers = frozenset(tuple(c) for c in self.covers)
        if len(set(elements)) != len(elements):
            raise ValueError("element labels must be distinct")
        known = set(elements)
        for lo, hi in covers:
            if lo not in known or hi not in known:
                raise ValueError(f"cover ({lo}, {hi}) mentions an unknown element")
            if lo == hi:
                raise ValueError("a cover cannot be a loop")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "covers", covers)
        self._check_acyclic()
        for lo, hi in covers:
            # transitively reduced: no other path lo < .. < hi
            if any(lo in self.down[mid] for mid in self.lower_covers[hi] if mid != lo):
                raise ValueError(f"cover ({lo}, {hi}) is implied by other covers")

    def _check_acyclic(self) -> None:
        state: dict = {}
        for start in self.elements:
            if start in state:
                continue
            stack = [(start, iter(self.upper_covers[start]))]
            state[start] = 1
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    state[node] = 2
                    stack.pop()
                elif state.get(nxt) == 1:
                    raise ValueError("cover relation has a cycle")
                elif nxt not in state:
                    state[nxt] = 1
                    stack.append((nxt, iter(self.upper_covers[nxt])))

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def upper_covers(self) -> dict[str, tuple[str, ...]]:
        out = {x: [] for x in self.elements}
        for lo, hi in sorted(self.covers, key=self._pos):
            out[lo].append(hi)
        return {x: tuple(v) for x, v in out.items()}

    @cached_property
    def lower_covers(self) -> dict[str, tuple[str, ...]]:
        out = {x: [] for x in self.elements}
        for lo, hi in sorted(self.covers, key=self._pos):
            out[hi].append(lo)
        return {x: tuple(v) for x, v in out.items()}

    def _pos(self, pair):
        idx = self.index
        return (idx[pair[0]], idx[pair[1]])

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def down(self) -> dict[str, frozenset]:
        """Strict down-set of every element."""
        memo: dict = {}

        def below(x):
            if x not in memo:
                acc = set()
                for y in self.lower_covers[x]:
                    acc.add(y)
                    acc |= below(y)
                memo[x] = frozenset(acc)
            return memo[x]

        for x in self.elements:
            below(x)
        return memo

    def leq(self, x: str, y: str) -> bool:
        return x == y or x in self.down[y]

    def less(self, x: str, y: str) -> bool:
        return x in self.down[y]

    @cached_property
    def linear_extension(self) -> tuple[str, ...]:
        order = []
        placed = set()
        pending = list(self.elements)
        while pending:
            for x in pending:
                if all(y in placed for y in self.lower_covers[x]):
                    order.append(x)
                    placed.add(x)
                    pending.remove(x)
                    break
        return tuple(order)

    def minimal_elements(self) -> list[str]:
        return [x for x in self.elements if not self.lower_covers[x]]

    def maximal_elements(self) -> list[str]:
        return [x for x in self.elements if not self.upper_covers[x]]

    def is_ideal(self, members: Iterable[str]) -> bool:
        members = set(members)
        return all(self.down[x] <= members for x in members)

    def sort_key(self, ideal: Iterable[str]):
        return (len(ideal), sorted(ideal))

    def ordered(self, ideal: Iterable[str]) -> list[str]:
        """Members listed in basis order."""
        return sorted(ideal, key=self.index.__getitem__)

    def to_json(self) -> str:
        covers = sorted(self.covers, key=self._pos)
        return json.dumps({"elements": list(self.elements), "covers": [list(c) for c in covers]})

    @classmethod
    def from_json(cls, text: str) -> "Poset":
        data = json.loads(text)
        return cls(tuple(data["elements"]), frozenset(tuple(c) for c in data["covers"]))

    @classmethod
    def from_relations(cls, elements: Sequence[str], relations: Iterable[tuple[str, str]]) -> "Poset":
        """Build from any generating set of strict relations by transitive reduction."""
        elements = tuple(elements)
        up = {x: set() for x in elements}
        for lo, hi in relations:
            up[lo].add(hi)
        closure = {}

        def above(x):
            if x not in closure:
                acc = set()
                for y in up[x]:
                    acc.add(y)
                    acc |= above(y)
                closure[x] = acc
            return closure[x]

        covers = set()
        for x in elements:
            ups = above(x)
            for y in ups:
                if not any(y in above(z) for z in ups if z != y):
                    covers.add((x, y))
        return cls(elements, frozenset(covers))


def chain(n: int) -> Poset:
    labels = tuple(f"p{i}" for i in range(1, n + 1))
    return Poset(labels, frozenset((labels[i], labels[i + 1]) for i in range(n - 1)))


def antichain(n: int) -> Poset:
    return Poset(tuple(f"p{i}" for i in range(1, n + 1)), frozenset())


def pi_elements(a: int, b: int) -> tuple[str, ...]:
    """Basis order e_1..e_{a-1}, e'_2..e'_{a-1}, f'_1..f'_{b-1}, f_2..f_b."""
    return (tuple(f"e{i}" for i in range(1, a))
            + tuple(f"ep{i}" for i in range(2, a))
            + tuple(f"fp{j}" for j in range(1, b))
            + tuple(f"f{j}" for j in range(2, b + 1)))


def build_pi(a: int, b: int) -> Poset:
    """The poset Pi_{a,b} with 2a + 2b - 5 elements."""
    if a < 2 or b < a:
        raise DomainError(f"Pi_(a,b) needs 2 <= a <= b, got a={a}, b={b}")
    covers = set()
    for i in range(1, a - 1):
        covers.add((f"e{i + 1}", f"e{i}"))
    for j in range(2, b):
        covers.add((f"f{j}", f"f{j + 1}"))
    for jp in range(1, b - 1):
        covers.add((f"fp{jp}", f"fp{jp + 1}"))
    for ip in range(2, a - 1):
        covers.add((f"ep{ip + 1}", f"ep{ip}"))
    covers.add((f"e{a - 1}", "fp1"))
    for jp in range(1, b):
        covers.add((f"f{jp + 1}", f"fp{jp}"))
    if a >= 3:
        covers.add(("fp1", f"ep{a - 1}"))
    for ip in range(2, a):
        covers.add((f"e{ip - 1}", f"ep{ip}"))
    return Poset(pi_elements(a, b), frozenset(covers))


def enumerate_ideals(P: Poset) -> list[PosetIdeal]:
    """All poset ideals, ordered by size and then by sorted labels."""
    ext = P.linear_extension
    out = []

    def rec(k: int, members: frozenset):
        if k == len(ext):
            out.append(members)
            return
        x = ext[k]
        rec(k + 1, members)
        if all(y in members for y in P.lower_covers[x]):
            rec(k + 1, members | {x})

    rec(0, frozenset())
    out.sort(key=P.sort_key)
    return out


def ideal_union(i: PosetIdeal, j: PosetIdeal) -> PosetIdeal:
    return frozenset(i) | frozenset(j)


def ideal_intersection(i: PosetIdeal, j: PosetIdeal) -> PosetIdeal:
    return frozenset(i) & frozenset(j)


def ideal_from_antichain(P: Poset, anti: Iterable[str]) -> PosetIdeal:
    anti = list(anti)
    for x in anti:
        for y in anti:
            if x != y and P.less(x, y):
                raise ValueError(f"{x} < {y}: not an antichain")
    out = set(anti)
    for x in anti:
        out |= P.down[x]
    return frozenset(out)


def antichain_of_ideal(P: Poset, ideal: Iterable[str]) -> frozenset:
    ideal = frozenset(ideal)
    return frozenset(x for x in ideal if not any(P.less(x, y) for y in ideal))


def generated_ideal(P: Poset, elements: Iterable[str]) -> PosetIdeal:
    """Down-set generated by arbitrary elements (``<p : p in A>``)."""
    out = set()
    for x in elements:
        out.add(x)
        out |= P.down[x]
    return frozenset(out)


def ideal_label(P: Poset, ideal: Iterable[str]) -> str:
    return "z(" + ",".join(P.ordered(ideal)) + ")"


def hibi_table(P: Poset) -> VariableTable:
    """x_1..x_|P| for the elements in basis order, then the homogenising x_{|P|+1}."""
    n = len(P) + 1
    return VariableTable([f"x{i}" for i in range(1, n + 1)], ["poset"] * (n - 1) + ["hom"])


def hibi_generators(P: Poset) -> list[Polynomial]:
    """One squarefree monomial (prod of members) * x_{|P|+1} per ideal."""
    table = hibi_table(P)
    out = []
    for ideal in enumerate_ideals(P):
        e = [0] * table.count
        for x in ideal:
            e[P.index[x]] = 1
        e[-1] = 1
        out.append(Polynomial.monomial(table, e))
    return out


def hibi_z_table(P: Poset, ideals: Sequence[PosetIdeal] | None = None) -> VariableTable:
    ideals = enumerate_ideals(P) if ideals is None else ideals
    return VariableTable([ideal_label(P, i) for i in ideals], ["z"] * len(ideals))


def hibi_toric_gens(P: Poset) -> list[Polynomial]:
    """z_I z_J - z_{I|J} z_{I&J} for every incomparable pair of ideals."""
    ideals = enumerate_ideals(P)
    table = hibi_z_table(P, ideals)
    var = {i: table.var(ideal_label(P, i)) for i in ideals}
    out = []
    for a, i in enumerate(ideals):
        for j in ideals[a + 1:]:
            if i <= j or j <= i:
                continue
            out.append(var[i] * var[j] - var[i | j] * var[i & j])
    return out


def is_graded(P: Poset) -> bool:
    """True iff all maximal chains have the same number of elements."""
    lengths: dict = {}

    def up(x):
        if x not in lengths:
            ups = P.upper_covers[x]
            if not ups:
                lengths[x] = {1}
            else:
                acc = set()
                for y in ups:
                    acc |= {k + 1 for k in up(y)}
                lengths[x] = acc
        return lengths[x]

    total = set()
    for x in P.minimal_elements():
        total |= up(x)
    return len(total) <= 1


def maximal_chains(P: Poset) -> list[tuple[str, ...]]:
    out = []

    def walk(path):
        ups = P.upper_covers[path[-1]]
        if not ups:
            out.append(tuple(path))
        for y in ups:
            walk(path + [y])

    for x in P.minimal_elements():
        walk([x])
    return out


def indicator(P: Poset, ideal: Iterable[str]) -> tuple[int, ...]:
    ideal = set(ideal)
    return tuple(int(x in ideal) for x in P.elements)


def encode_ideals_B(a: int, b: int) -> PointConfiguration:
    """0/1 indicator vectors of the ideals of Pi_{a,b} on the fixed basis."""
    P = build_pi(a, b)
    ideals = enumerate_ideals(P)
    return PointConfiguration(tuple(indicator(P, i) for i in ideals),
                              tuple(ideal_label(P, i) for i in ideals))


def ideal_roster(a: int, b: int) -> list[tuple[str, PosetIdeal]]:
    """The ideals of Pi_{a,b} listed family by family from their generators.

    Families follow the case list of the unimodular map: the generator e'_a
    stands for "no e'-part" (it is not an element), so the second family runs
    over 1 <= i < i' <= a.
    """
    P = build_pi(a, b)
    present = set(P.elements)

    def gen(*names):
        return generated_ideal(P, [x for x in names if x in present])

    out = [("empty", frozenset())]
    for i in range(1, a):
        out.append((f"<e{i}>", gen(f"e{i}")))
    for j in range(2, b + 1):
        out.append((f"<f{j}>", gen(f"f{j}")))
    for i in range(1, a):
        for j in range(2, b + 1):
            out.append((f"<e{i},f{j}>", gen(f"e{i}", f"f{j}")))
    for i in range(1, a + 1):
        for ip in range(i + 1, a + 1):
            out.append((f"<e{i},ep{ip}>", gen(f"e{i}", f"ep{ip}", "fp1", "f2")))
            for j in range(3, b + 1):
                out.append((f"<e{i},ep{ip},f{j}>", gen(f"e{i}", f"ep{ip}", "fp1", f"f{j}")))
    for jp in range(1, b + 1):
        for j in range(jp + 1, b + 1):
            out.append((f"<fp{jp},f{j}>", gen(f"e{a - 1}", f"fp{jp}", f"f{j}")))
            for i in range(1, a - 1):
                out.append((f"<e{i},fp{jp},f{j}>", gen(f"e{i}", f"fp{jp}", f"f{j}")))
    for i in range(1, a):
        for ip in range(i + 1, a):
            for jp in range(2, b + 1):
                for j in range(jp + 1, b + 1):
                    out.append((f"<e{i},ep{ip},fp{jp},f{j}>",
                                gen(f"e{i}", f"ep{ip}", f"fp{jp}", f"f{j}")))
    return out
