"""Binomial edge rings of graphs and the complete bipartite apparatus.

The edge ring of a graph G on [d] is the subalgebra of k[x_1..x_d, y_1..y_d]
generated by the 2x2 minors ``x_i y_j - x_j y_i``, one per edge.  For
K_{a,b} the vertices of the two sides get separate variable names
(x, y' on one side, x', y on the other) and the generating set is enlarged
by the quartics ``f_{ij'} f_{i'j} - f_{ij} f_{i'j'}``.
"""

from __future__ import annotations

import json
import time
from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

from ._engine import DEFAULT_PRIME, QQ, UNLIMITED, Budget, Field
from .errors import BudgetExceeded, DomainError, EmptyInputError, StrategyError
from .groebner import AlgebraMap, Ideal, ideals_equal, kernel_basis, quotient_dimension
from .poly import (
    MonomialOrder, Polynomial, VariableTable, build_order_3_1, format_polynomial,
    grlex, initial_form, weight_of, weight_vector_w,
)
from .posets import (
    build_pi, encode_ideals_B, enumerate_ideals, hibi_toric_gens, ideal_label, ideal_roster,
    indicator, is_graded,
)
from .sagbi import SubalgebraGens, initial_exponents, sagbi_check
from .toric import PointConfiguration, lattice_rank, toric_ideal


# ---------------------------------------------------------------- graphs

@dataclass(frozen=True)
class Graph:
    """Simple connected graph on vertices 1..d; edges stored as sorted pairs."""

    d: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("a graph needs at least one vertex")
        norm = set()
        for e in self.edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= self.d and 1 <= j <= self.d):
                raise ValueError(f"edge {{{i}, {j}}} leaves the vertex range 1..{self.d}")
            pair = (min(i, j), max(i, j))
            if pair in norm:
                raise ValueError(f"repeated edge {pair}")
            norm.add(pair)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if not self._connected():
            raise ValueError("graph is not connected")

    def _connected(self) -> bool:
        adj = self.adjacency()
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.d

    def adjacency(self) -> dict[int, list[int]]:
        adj = {v: [] for v in range(1, self.d + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    @property
    def n(self) -> int:
        return len(self.edges)

    def two_coloring(self) -> dict[int, int] | None:
        """Colour 0 for vertex 1; None when an odd cycle exists."""
        adj = self.adjacency()
        colour = {1: 0}
        queue = deque([1])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in colour:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return None
        return colour

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def is_tree(self) -> bool:
        return self.n == self.d - 1

    def is_unicyclic(self) -> bool:
        return self.n == self.d

    def to_json(self) -> str:
        return json.dumps({"vertices": self.d, "edges": [list(e) for e in self.edges]})

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        data = json.loads(text)
        return cls(int(data["vertices"]), tuple(tuple(e) for e in data["edges"]))


G1_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (1, 8),
            (1, 4), (1, 5), (4, 8), (5, 8))
G2_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 4), (1, 6), (2, 5),
            (3, 6), (6, 7), (7, 8), (5, 8))


def path_graph(d: int) -> Graph:
    return Graph(d, tuple((i, i + 1) for i in range(1, d)))


def cycle_graph(d: int) -> Graph:
    if d < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    return Graph(d, tuple((i, i + 1) for i in range(1, d)) + ((1, d),))


def star_graph(b: int) -> Graph:
    """K_{1,b}: centre 1, leaves 2..b+1."""
    return Graph(b + 1, tuple((1, j) for j in range(2, b + 2)))


def complete_graph(d: int) -> Graph:
    return Graph(d, tuple((i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with sides 1..a and a+1..a+b."""
    if a < 1 or b < 1:
        raise DomainError("both sides of K_{a,b} need a vertex")
    return Graph(a + b, tuple((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


def _ints(text: str, count: int) -> list[int]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != count:
        raise DomainError(f"expected {count} integer parameter(s), got {text!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise DomainError(f"bad integer parameter in {text!r}") from None


def named_graph(name: str) -> Graph:
    """``g1``, ``g2``, ``path:d``, ``cycle:d``, ``star:b``, ``complete:d``,
    ``complete_bipartite:a,b`` (alias ``kab:a,b``)."""
    key, _, arg = name.strip().lower().partition(":")
    if key == "g1":
        return Graph(8, G1_EDGES)
    if key == "g2":
        return Graph(8, G2_EDGES)
    builders: dict[str, tuple[int, Callable]] = {
        "path": (1, path_graph),
        "cycle": (1, cycle_graph),
        "star": (1, star_graph),
        "complete": (1, complete_graph),
        "complete_bipartite": (2, complete_bipartite),
        "kab": (2, complete_bipartite),
    }
    if key not in builders:
        raise DomainError(f"unknown graph name {name!r}")
    count, build = builders[key]
    try:
        return build(*_ints(arg, count))
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(str(exc)) from None


# ------------------------------------------------------- edge generators

def edge_label(i: int, j: int) -> str:
    return f"z{i}_{j}"


def binomial_gens(G: Graph, order: MonomialOrder | None = None) -> SubalgebraGens:
    """x_i y_j - x_j y_i for each edge i < j; default order graded lex x_1 > .. > x_d > y_1 > .. > y_d."""
    if not G.edges:
        raise EmptyInputError("the graph has no edges")
    table = VariableTable.graph(G.d)
    order = order or grlex(2 * G.d)
    x = table.gens()[:G.d]
    y = table.gens()[G.d:]
    gens = tuple(x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1] for i, j in G.edges)
    return SubalgebraGens(gens, order, tuple(edge_label(i, j) for i, j in G.edges))


def bipartite_order(G: Graph) -> MonomialOrder:
    """Graded lex with x_U > x_V > y_U > y_V, U the colour class of vertex 1.

    Under it every edge has leading monomial x_u y_v with u in U, v in V.
    """
    colour = G.two_coloring()
    if colour is None:
        raise DomainError("graph is not bipartite")
    U = [v for v in range(1, G.d + 1) if colour[v] == 0]
    V = [v for v in range(1, G.d + 1) if colour[v] == 1]
    d = G.d
    ranking = [u - 1 for u in U] + [v - 1 for v in V] + [d + u - 1 for u in U] + [d + v - 1 for v in V]
    return grlex(2 * d, ranking)


def edge_map(G: Graph) -> AlgebraMap:
    F = binomial_gens(G)
    return AlgebraMap(F.label_table(), F.gens)


def even_cycle_extra_gen(k: int) -> Polynomial:
    """Degree-2k element of the edge ring of C_{2k} whose leading monomial is new.

    prod_j f_{2j-1,2j} - s * f_{1,2k} * prod_j f_{2j,2j+1} with s = (-1)^(k-1);
    the sign makes the leading terms of the two products cancel.
    """
    if k < 2:
        raise DomainError("need k >= 2")
    G = cycle_graph(2 * k)
    F = binomial_gens(G)
    f = dict(zip(G.edges, F.gens))
    table = F.table
    left = Polynomial.constant(table, 1)
    for j in range(1, k + 1):
        left = left * f[(2 * j - 1, 2 * j)]
    right = f[(1, 2 * k)]
    for j in range(1, k):
        right = right * f[(2 * j, 2 * j + 1)]
    sign = 1 if k % 2 == 1 else -1
    return left - right.scale(sign)


# ------------------------------------------------------------ dimensions

def dim_upper_bound(G: Graph) -> int:
    """min(n, 2d-4) for bipartite G and min(n, 2d-3) otherwise.

    For d <= 2 the bipartite expression drops below the true value d - 1,
    so the bound used is max(2d-4, d-1), which agrees for d >= 3.
    """
    return bipartite_bound(G) if G.is_bipartite() else general_bound(G)


def bipartite_bound(G: Graph) -> int:
    return min(G.n, max(2 * G.d - 4, G.d - 1))


def general_bound(G: Graph) -> int:
    return min(G.n, 2 * G.d - 3)


@dataclass(frozen=True)
class DimensionResult:
    dimension: int
    strategy: str
    field: str
    bound: int
    bipartite: bool
    fallback: bool = False
    note: str = ""
    bounds: tuple[int, int] = (0, 0)  # (bipartite formula, general formula), both evaluated

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension, "strategy": self.strategy, "field": self.field,
            "bound": self.bound, "bipartite": self.bipartite,
            "bounds": {"bipartite_formula": self.bounds[0], "general_formula": self.bounds[1]},
            "fallback": self.fallback, "note": self.note,
        }


def _kernel_dimension(F: SubalgebraGens, field: Field, budget: Budget) -> int:
    gb = kernel_basis(AlgebraMap(F.label_table(), F.gens), field=field, budget=budget)
    return quotient_dimension(gb)


def dim_edge_ring(G: Graph, strategy: str = "kernel", basis: SubalgebraGens | None = None,
                  field: Field = QQ, budget: Budget | None = None,
                  fallback: bool = True) -> DimensionResult:
    """Krull dimension of the edge ring of ``G``.

    ``kernel``: dimension of k[z]/ker from a Groebner basis of the kernel.  If
    the rational run exhausts ``budget`` and ``fallback`` is set, the run is
    repeated over GF(32003) without a time limit and flagged.

    ``lattice``: rank of the initial exponents, valid only for a SAGBI basis;
    ``basis`` (default: the edge binomials) is checked first.
    """
    budget = budget or UNLIMITED
    bound = dim_upper_bound(G)
    bip = G.is_bipartite()
    both = (bipartite_bound(G), general_bound(G))
    if strategy == "kernel":
        F = basis or binomial_gens(G)
        try:
            dim = _kernel_dimension(F, field, budget)
            return DimensionResult(dim, strategy, field.name, bound, bip, bounds=both)
        except BudgetExceeded:
            if not fallback or field.prime is not None:
                raise
        fp = Field(DEFAULT_PRIME)
        dim = _kernel_dimension(F, fp, UNLIMITED)
        return DimensionResult(dim, strategy, fp.name, bound, bip, True,
                               "rational run exceeded the budget; prime field used", both)
    if strategy == "lattice":
        F = basis or binomial_gens(G)
        result = sagbi_check(F, budget)
        if not result.passed:
            raise StrategyError("lattice strategy needs a SAGBI basis; the check failed "
                                f"with witness {format_polynomial(result.witness)}")
        return DimensionResult(lattice_rank(initial_exponents(F)), strategy, field.name, bound, bip,
                               note="rank of initial exponents of a verified SAGBI basis",
                               bounds=both)
    raise StrategyError(f"unknown strategy {strategy!r}; use 'kernel' or 'lattice'")


# ---------------------------------------------------- the K_{a,b} frame

def quad_label(i: int, j: int) -> str:
    return f"z{i}_{j}"


def quart_label(i: int, ip: int, jp: int, j: int) -> str:
    return f"z{i}_{ip}_{jp}_{j}"


def r_table(a: int, b: int) -> VariableTable:
    """z_ij (lexicographic in (i, j)) followed by z_{i i' j' j} (lexicographic)."""
    names = [quad_label(i, j) for i in range(1, a + 1) for j in range(1, b + 1)]
    names += [quart_label(i, ip, jp, j)
              for i in range(1, a + 1) for ip in range(i + 1, a + 1)
              for jp in range(1, b + 1) for j in range(jp + 1, b + 1)]
    return VariableTable(names, ["z"] * len(names))


@dataclass(frozen=True)
class KabFrame:
    a: int
    b: int
    table: VariableTable
    order: MonomialOrder
    weight: tuple[int, ...]
    gens: SubalgebraGens
    config: PointConfiguration
    rtable: VariableTable

    @property
    def phi(self) -> AlgebraMap:
        return AlgebraMap(self.rtable, self.gens.gens)

    def z_weights(self) -> tuple[int, ...]:
        """A^T w: the weight of each z variable is w dotted with its point."""
        return tuple(weight_of(self.weight, p) for p in self.config.points)

    def quadrics_only(self) -> SubalgebraGens:
        k = self.a * self.b
        return SubalgebraGens(self.gens.gens[:k], self.order, self.gens.labels[:k])


def kab_frame(a: int, b: int) -> KabFrame:
    if a < 2 or b < a:
        raise DomainError(f"need 2 <= a <= b, got a={a}, b={b} (use the star graph for a = 1)")
    table = VariableTable.sab(a, b)
    x = [table.var(f"x{i}") for i in range(1, a + 1)]
    xp = [table.var(f"xp{j}") for j in range(1, b + 1)]
    yp = [table.var(f"yp{i}") for i in range(1, a + 1)]
    y = [table.var(f"y{j}") for j in range(1, b + 1)]
    f = {(i, j): x[i - 1] * y[j - 1] - xp[j - 1] * yp[i - 1]
         for i in range(1, a + 1) for j in range(1, b + 1)}
    rt = r_table(a, b)
    gens = []
    for name in rt.names:
        idx = tuple(int(t) for t in name[1:].split("_"))
        if len(idx) == 2:
            gens.append(f[idx])
        else:
            i, ip, jp, j = idx
            gens.append(f[i, jp] * f[ip, j] - f[i, j] * f[ip, jp])
    order = build_order_3_1(a, b)
    F = SubalgebraGens(tuple(gens), order, tuple(rt.names))
    return KabFrame(a, b, table, order, weight_vector_w(a, b), F, initial_exponents(F), rt)


def kab_points(a: int, b: int) -> PointConfiguration:
    """A_{a,b} written directly on the S_{a,b} coordinates (x, x', y', y)."""
    n = 2 * (a + b)
    pts = []
    labels = []

    def unit(*pos):
        v = [0] * n
        for p in pos:
            v[p] = 1
        return tuple(v)

    X = lambda i: i - 1
    XP = lambda j: a + j - 1
    YP = lambda i: a + b + i - 1
    Y = lambda j: 2 * a + b + j - 1
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            pts.append(unit(X(i), Y(j)))
            labels.append(quad_label(i, j))
    for i in range(1, a + 1):
        for ip in range(i + 1, a + 1):
            for jp in range(1, b + 1):
                for j in range(jp + 1, b + 1):
                    pts.append(unit(X(i), YP(ip), XP(jp), Y(j)))
                    labels.append(quart_label(i, ip, jp, j))
    return PointConfiguration(tuple(pts), tuple(labels))


def gens_count(a: int, b: int) -> int:
    return a * b + comb(a, 2) * comb(b, 2)


# ---------------------------------------------------- unimodular map

def unimodular_map(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    """Integer matrix taking S_{a,b} exponent coordinates to Z^{Pi_{a,b}}.

    Rows follow the basis e_1..e_{a-1}, e'_2..e'_{a-1}, f'_1..f'_{b-1}, f_2..f_b.
    Row e_k sums the x_1..x_k coordinates, e'_k sums y'_2..y'_k, f'_k sums
    x'_k..x'_b and f_k sums y_k..y_b.  The coordinates e_a, f_1 (constantly
    1 on A_{a,b}) and e'_a (constantly 0) are left out.
    """
    if a < 2 or b < a:
        raise DomainError(f"need 2 <= a <= b, got a={a}, b={b}")
    n = 2 * (a + b)
    X = lambda i: i - 1
    XP = lambda j: a + j - 1
    YP = lambda i: a + b + i - 1
    Y = lambda j: 2 * a + b + j - 1
    rows = []

    def row(cols):
        r = [0] * n
        for c in cols:
            r[c] = 1
        rows.append(tuple(r))

    for k in range(1, a):
        row(X(i) for i in range(1, k + 1))
    for k in range(2, a):
        row(YP(i) for i in range(2, k + 1))
    for k in range(1, b):
        row(XP(j) for j in range(k, b + 1))
    for k in range(2, b + 1):
        row(Y(j) for j in range(k, b + 1))
    return tuple(rows)


def apply_map(matrix: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(r * x for r, x in zip(row, v)) for row in matrix)


# ------------------------------------------ binomial and relation families

def _index_tuples(a: int, b: int):
    """(i, i', j', j) with i < i', j' < j."""
    for i in range(1, a + 1):
        for ip in range(i + 1, a + 1):
            for jp in range(1, b + 1):
                for j in range(jp + 1, b + 1):
                    yield i, ip, jp, j


class _Z:
    """Variable lookup on R_{a,b}."""

    def __init__(self, table: VariableTable):
        self.table = table

    def q(self, i: int, j: int) -> Polynomial:
        return self.table.var(quad_label(i, j))

    def r(self, i: int, ip: int, jp: int, j: int) -> Polynomial:
        return self.table.var(quart_label(i, ip, jp, j))


def _families_3_4(z: _Z, a: int, b: int):
    """Yield (family, index tuple, binomial) for the eleven families."""
    q, r = z.q, z.r
    rng_a = range(1, a + 1)
    rng_b = range(1, b + 1)
    for i in rng_a:
        for j in rng_b:
            for p in rng_a:
                for qq in rng_b:
                    if i < p and j < qq:
                        yield 1, (i, j, p, qq), q(i, j) * q(p, qq) - q(i, qq) * q(p, j)
    for i in rng_a:
        for j in rng_b:
            for p, pp, qp, qq in _index_tuples(a, b):
                idx = (i, j, p, pp, qp, qq)
                lead = q(i, j) * r(p, pp, qp, qq)
                if i < p and qq < j:
                    yield 2, idx, lead - q(p, qq) * r(i, pp, qp, j)
                if p <= i and qq < j:
                    yield 3, idx, lead - q(i, qq) * r(p, pp, qp, j)
                if i < p and j <= qq:
                    yield 4, idx, lead - q(p, j) * r(i, pp, qp, qq)
    for i, ip, jp, j in _index_tuples(a, b):
        for p, pp, qp, qq in _index_tuples(a, b):
            idx = (i, ip, jp, j, p, pp, qp, qq)
            lead = r(i, ip, jp, j) * r(p, pp, qp, qq)
            if i <= p and ip <= pp and jp <= qp and j <= qq:
                yield 5, idx, lead - r(i, ip, qp, qq) * r(p, pp, jp, j)
            if i > p and ip < pp and jp <= qp and j <= qq:
                yield 6, idx, lead - r(p, ip, qp, qq) * r(i, pp, jp, j)
            if i < p and ip > pp and jp <= qp and j <= qq:
                yield 7, idx, lead - r(i, pp, qp, qq) * r(p, ip, jp, j)
            if i <= p and ip <= pp and jp > qp and j < qq:
                yield 8, idx, lead - r(i, ip, jp, qq) * r(p, pp, qp, j)
            if i <= p and ip <= pp and jp < qp and j > qq:
                yield 9, idx, lead - r(i, ip, qp, j) * r(p, pp, jp, qq)
            if (i > p and ip < pp and jp > qp and j < qq) or (i < p and ip > pp and jp < qp and j > qq):
                yield 10, idx, lead - r(p, ip, jp, qq) * r(i, pp, qp, j)
            if (i > p and ip < pp and jp < qp and j > qq) or (i < p and ip > pp and jp > qp and j < qq):
                yield 11, idx, lead - r(p, ip, qp, j) * r(i, pp, jp, qq)


def _families_3_5(z: _Z, a: int, b: int):
    """Yield (family, index tuple, relation) for the thirteen families."""
    q, r = z.q, z.r
    rng_a = range(1, a + 1)
    rng_b = range(1, b + 1)
    for i in rng_a:
        for j in rng_b:
            for p in rng_a:
                for qq in rng_b:
                    if i < p and j < qq:
                        yield 1, (i, j, p, qq), q(i, j) * q(p, qq) - q(i, qq) * q(p, j) - r(i, p, j, qq)
    for i in rng_a:
        for j in rng_b:
            for p, pp, qp, qq in _index_tuples(a, b):
                idx = (i, j, p, pp, qp, qq)
                lead = q(i, j) * r(p, pp, qp, qq)
                if i < p and qq < j:
                    yield 2, idx, (lead - q(p, qq) * r(i, pp, qp, j) + q(i, qp) * r(p, pp, qq, j)
                                   + q(pp, j) * r(i, p, qp, qq) + q(pp, qp) * r(i, p, qq, j))
                if p <= i and qq < j:
                    yield 3, idx, lead - q(i, qq) * r(p, pp, qp, j) + q(i, qp) * r(p, pp, qq, j)
                if i < p and j <= qq:
                    yield 4, idx, lead - q(p, j) * r(i, pp, qp, qq) + q(pp, j) * r(i, p, qp, qq)
    for i, ip, jp, j in _index_tuples(a, b):
        for p, pp, qp, qq in _index_tuples(a, b):
            idx = (i, ip, jp, j, p, pp, qp, qq)
            lead = r(i, ip, jp, j) * r(p, pp, qp, qq)
            if i <= p and ip <= pp and jp <= qp and j <= qq:
                yield 5, idx, lead - r(i, ip, qp, qq) * r(p, pp, jp, j)
            if i > p and ip < pp and jp <= qp and j <= qq:
                yield 6, idx, (lead - r(p, ip, qp, qq) * r(i, pp, jp, j)
                               + r(p, i, qp, qq) * r(ip, pp, jp, j))
            if i < p and ip > pp and jp <= qp and j <= qq:
                yield 7, idx, (lead - r(i, pp, qp, qq) * r(p, ip, jp, j)
                               + r(pp, ip, jp, j) * r(i, p, qp, qq))
            if i <= p and ip <= pp and jp > qp and j < qq:
                yield 8, idx, (lead - r(i, ip, jp, qq) * r(p, pp, qp, j)
                               + r(i, ip, j, qq) * r(p, pp, qp, jp))
            if i <= p and ip <= pp and jp < qp and j > qq:
                yield 9, idx, (lead - r(i, ip, qp, j) * r(p, pp, jp, qq)
                               + r(i, ip, jp, qp) * r(p, pp, qq, j))
            if i > p and ip < pp and jp > qp and j < qq:
                yield 10, idx, (lead - r(p, ip, jp, qq) * r(i, pp, qp, j) + r(p, i, jp, qq) * r(ip, pp, qp, j)
                                + r(i, pp, j, qq) * r(p, ip, qp, jp) - r(ip, pp, j, qq) * r(p, i, qp, jp))
            if i < p and ip > pp and jp < qp and j > qq:
                yield 11, idx, (lead - r(p, ip, jp, qq) * r(i, pp, qp, j) + r(i, p, qp, j) * r(pp, ip, jp, qq)
                                + r(p, ip, qq, j) * r(i, pp, jp, qp) - r(pp, ip, qq, j) * r(i, p, jp, qp))
            if i > p and ip < pp and jp < qp and j > qq:
                yield 12, idx, (lead - r(p, ip, qp, j) * r(i, pp, jp, qq) + r(p, i, qp, j) * r(ip, pp, jp, qq)
                                + r(i, pp, qq, j) * r(p, ip, jp, qp) - r(ip, pp, qq, j) * r(p, i, jp, qp))
            if i < p and ip > pp and jp > qp and j < qq:
                yield 13, idx, (lead - r(p, ip, qp, j) * r(i, pp, jp, qq) + r(i, p, jp, qq) * r(pp, ip, qp, j)
                                + r(p, ip, j, qq) * r(i, pp, qp, jp) - r(pp, ip, j, qq) * r(i, p, qp, jp))


# relation family -> binomial family
RELATION_TO_BINOMIAL = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 11, 11)


def _dedup(items):
    """Drop zeros and repeats up to sign; keep the first occurrence."""
    seen = set()
    out = []
    for fam, idx, g in items:
        if g.is_zero() or g in seen or -g in seen:
            continue
        seen.add(g)
        out.append((fam, idx, g))
    return out


def binomials_3_4_tagged(a: int, b: int, table: VariableTable | None = None):
    z = _Z(table or r_table(a, b))
    return _dedup(_families_3_4(z, a, b))


def relations_3_5_tagged(a: int, b: int, table: VariableTable | None = None):
    z = _Z(table or r_table(a, b))
    return _dedup(_families_3_5(z, a, b))


def binomials_3_4(a: int, b: int) -> list[Polynomial]:
    """Binomial generators of the toric ideal of A_{a,b}, eleven families."""
    return [g for _, _, g in binomials_3_4_tagged(a, b)]


def relations_3_5(a: int, b: int) -> list[Polynomial]:
    """Lifts of the eleven binomial families to the kernel of phi_{a,b}."""
    return [g for _, _, g in relations_3_5_tagged(a, b)]


# ------------------------------------------------------ verification

@dataclass
class StepResult:
    name: str
    passed: bool
    ms: float | None
    witness: str | None = None

    def as_dict(self, timings: bool) -> dict:
        return {"name": self.name, "pass": self.passed,
                "ms": round(self.ms, 3) if (timings and self.ms is not None) else None,
                "witness": self.witness}


@dataclass
class VerificationReport:
    a: int
    b: int
    field: str
    steps: list[StepResult] = field(default_factory=list)
    dimension: int | None = None
    gorenstein_expected: bool | None = None
    graded: bool | None = None
    status: str = "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self, timings: bool = False) -> dict:
        return {
            "a": self.a, "b": self.b,
            "steps": [s.as_dict(timings) for s in self.steps],
            "dimension": self.dimension,
            "gorenstein_expected": self.gorenstein_expected,
            "graded": self.graded,
            "field": self.field,
            "pass": self.passed,
            "status": self.status,
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.as_dict(timings), indent=2)


STEP_NAMES = ("I_unimodular", "II_toric_ideal", "III_kernel_relations",
              "IV_initial_forms", "sagbi_criterion", "dimension")


def _step_unimodular(frame: KabFrame) -> str | None:
    a, b = frame.a, frame.b
    M = unimodular_map(a, b)
    B = encode_ideals_B(a, b)
    images = [apply_map(M, p) for p in frame.config.points]
    if len(set(images)) != len(images):
        return "map is not injective on A"
    if set(images) != B.as_set():
        extra = sorted(set(images) - B.as_set())
        return f"image differs from B; first stray point {extra[0] if extra else None}"
    P = build_pi(a, b)
    ideals = enumerate_ideals(P)
    roster = ideal_roster(a, b)
    roster_sets = {ideal for _, ideal in roster}
    if roster_sets != set(ideals):
        missing = set(ideals) - roster_sets
        return f"ideal list mismatch; missing {sorted(sorted(m) for m in missing)[:1]}"
    if len(ideals) != gens_count(a, b):
        return f"{len(ideals)} ideals, expected {gens_count(a, b)}"
    return None


def _hibi_in_r(frame: KabFrame) -> list[Polynomial]:
    """Hibi binomials of Pi_{a,b} renamed onto R_{a,b} through the unimodular map."""
    a, b = frame.a, frame.b
    P = build_pi(a, b)
    M = unimodular_map(a, b)
    by_point = {apply_map(M, p): lab for p, lab in zip(frame.config.points, frame.config.labels)}
    mapping = {}
    for ideal in enumerate_ideals(P):
        mapping[ideal_label(P, ideal)] = by_point[indicator(P, ideal)]
    return [g.rename(frame.rtable, mapping) for g in hibi_toric_gens(P)]


def _step_toric(frame: KabFrame, field: Field, budget: Budget) -> str | None:
    IA = toric_ideal(frame.config, field=field, budget=budget)
    binoms = Ideal(frame.rtable, tuple(binomials_3_4(frame.a, frame.b)))
    if not ideals_equal(IA, binoms, field=field, budget=budget):
        return "toric ideal of A differs from the ideal of the eleven binomial families"
    hibi = Ideal(frame.rtable, tuple(_hibi_in_r(frame)))
    if not ideals_equal(IA, hibi, field=field, budget=budget):
        return "toric ideal of A differs from the Hibi relations under the encoding"
    return None


def _step_kernel(frame: KabFrame, budget: Budget) -> str | None:
    phi = frame.phi
    for n, g in enumerate(relations_3_5(frame.a, frame.b)):
        if not phi(g).is_zero():
            return f"relation does not vanish: {format_polynomial(g)}"
        if n & 63 == 0:
            budget.check()
    return None


def _step_initial(frame: KabFrame) -> str | None:
    wz = frame.z_weights()
    z = _Z(frame.rtable)
    binom = {(fam, idx): g for fam, idx, g in _families_3_4(z, frame.a, frame.b)}
    for fam, idx, g in relations_3_5_tagged(frame.a, frame.b, frame.rtable):
        target = binom[(RELATION_TO_BINOMIAL[fam - 1], idx)]
        got = initial_form(wz, g)
        if got != target:
            return (f"family {fam} at {idx}: initial form {format_polynomial(got)} "
                    f"!= {format_polynomial(target)}")
    return None


def _step_sagbi(frame: KabFrame, budget: Budget) -> str | None:
    res = sagbi_check(frame.gens, budget)
    return None if res.passed else f"subduction remainder {format_polynomial(res.witness)}"


def _step_dimension(frame: KabFrame) -> tuple[str | None, int]:
    dim = lattice_rank(frame.config)
    want = 2 * (frame.a + frame.b - 2)
    return (None if dim == want else f"lattice rank {dim}, expected {want}"), dim


def verify_main_theorems(a: int, b: int, field: Field = QQ,
                         budget: Budget | None = None) -> VerificationReport:
    """Run the six checks for K_{a,b} in order and collect a report.

    A step that raises :class:`BudgetExceeded` is recorded as failed with
    that reason; later steps are not run and the status is
    ``budget_exceeded``.
    """
    budget = budget or UNLIMITED
    frame = kab_frame(a, b)
    report = VerificationReport(a, b, field.name)
    P = build_pi(a, b)
    report.gorenstein_expected = (a == 2 or a == b)
    report.graded = is_graded(P)
    dim_holder = {}

    def dimension():
        err, dim = _step_dimension(frame)
        dim_holder["dim"] = dim
        return err

    runners = (
        lambda: _step_unimodular(frame),
        lambda: _step_toric(frame, field, budget),
        lambda: _step_kernel(frame, budget),
        lambda: _step_initial(frame),
        lambda: _step_sagbi(frame, budget),
        dimension,
    )
    for name, run in zip(STEP_NAMES, runners):
        t0 = time.perf_counter()
        try:
            witness = run()
        except BudgetExceeded as exc:
            report.steps.append(StepResult(name, False, (time.perf_counter() - t0) * 1000,
                                           f"budget exceeded: {exc}"))
            report.status = "budget_exceeded"
            return report
        report.steps.append(StepResult(name, witness is None,
                                       (time.perf_counter() - t0) * 1000, witness))
        if witness is not None:
            report.status = "fail"
    report.dimension = dim_holder.get("dim")
    return report


__all__ = [
    "Graph", "named_graph", "path_graph", "cycle_graph", "star_graph", "complete_graph",
    "complete_bipartite", "binomial_gens", "bipartite_order", "edge_map", "even_cycle_extra_gen",
    "dim_upper_bound", "bipartite_bound", "general_bound", "dim_edge_ring", "DimensionResult", "KabFrame", "kab_frame", "kab_points",
    "gens_count", "r_table", "unimodular_map", "apply_map", "binomials_3_4", "relations_3_5",
    "binomials_3_4_tagged", "relations_3_5_tagged", "RELATION_TO_BINOMIAL",
    "VerificationReport", "StepResult", "STEP_NAMES", "verify_main_theorems",
]
