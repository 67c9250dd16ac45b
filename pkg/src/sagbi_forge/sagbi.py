"""Subduction and the SAGBI criterion via lifted toric relations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Sequence

from ._engine import UNLIMITED, Budget, Ring
from .errors import DimensionError, EmptyInputError
from .poly import MonomialOrder, Polynomial, VariableTable, leading_term
from .toric import PointConfiguration, toric_ideal


@dataclass(frozen=True)
class SubalgebraGens:
    """Generators of a subalgebra, the order used for leading terms, and z-labels."""

    gens: tuple[Polynomial, ...]
    order: MonomialOrder
    labels: tuple[str, ...]

    def __post_init__(self):
        gens = tuple(self.gens)
        labels = tuple(self.labels)
        if not gens:
            raise EmptyInputError("need at least one generator")
        if len(labels) != len(gens):
            raise DimensionError("one label per generator")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        table = gens[0].table
        for g in gens:
            if g.is_zero():
                raise EmptyInputError("generators must be nonzero")
            if g.table != table:
                raise DimensionError("generators over different tables")
        if self.order.nvars != table.count:
            raise DimensionError("order does not match the generators' table")
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "labels", labels)

    @property
    def table(self) -> VariableTable:
        return self.gens[0].table

    def label_table(self) -> VariableTable:
        return VariableTable(self.labels, ["z"] * len(self.labels))

    def __len__(self) -> int:
        return len(self.gens)

    def evaluate(self, q: Polynomial) -> Polynomial:
        """Substitute the generators for the z-labels of ``q``."""
        return q.substitute(self.gens, self.table)


def initial_exponents(F: SubalgebraGens) -> PointConfiguration:
    return PointConfiguration(tuple(leading_term(F.order, f)[1] for f in F.gens), F.labels)


class Subductor:
    """Reusable subduction context for one generating set."""

    def __init__(self, F: SubalgebraGens, budget: Budget = UNLIMITED):
        self.F = F
        self.ring = Ring(F.order)
        self.budget = budget
        self.lead_exps = []
        self.lead_coeffs = []
        for f in F.gens:
            c, e = leading_term(F.order, f)
            self.lead_exps.append(e)
            self.lead_coeffs.append(c)
        self._products: dict = {}
        self._fail: set = set()

    def factor(self, target: tuple) -> tuple | None:
        """Exponents e with sum e_i * lt(f_i) == target, or None.

        Depth-first over generators in label order, largest exponent first.
        """
        n = len(self.lead_exps)
        exps = [0] * n
        fail = self._fail

        def search(i: int, rest: tuple) -> bool:
            if not any(rest):
                return True
            if i == n or (i, rest) in fail:
                return False
            a = self.lead_exps[i]
            bound = min((r // x for r, x in zip(rest, a) if x), default=0)
            for k in range(bound, -1, -1):
                nxt = tuple(r - k * x for r, x in zip(rest, a)) if k else rest
                exps[i] = k
                if search(i + 1, nxt):
                    return True
            exps[i] = 0
            fail.add((i, rest))
            return False

        return tuple(exps) if search(0, tuple(target)) else None

    def product(self, e: tuple) -> list:
        """Encoded F^e normalised to leading coefficient 1."""
        got = self._products.get(e)
        if got is None:
            table = self.F.table
            p = Polynomial.constant(table, 1)
            for f, k in zip(self.F.gens, e):
                if k:
                    p = p * f ** k
            got = self.ring.monic(self.ring.encode(p))
            self._products[e] = got
        return got

    def subduct(self, p: Polynomial) -> tuple[Polynomial, dict]:
        """Return ``(r, combo)`` with ``p - r = sum(c * F^e for e, c in combo)``."""
        if p.table != self.F.table:
            raise DimensionError("polynomial and generators over different tables")
        ring = self.ring
        acc = {k: [m, c] for k, m, c in ring.encode(p)}
        heap = [-k for k in acc]
        heapify(heap)
        combo: dict = {}
        steps = 0
        while heap:
            k = -heappop(heap)
            slot = acc.get(k)
            if slot is None:
                continue
            m, c = slot
            e = self.factor(ring.unpack(m))
            if e is None:
                heappush(heap, -k)
                break
            prod = self.product(e)
            combo[e] = combo.get(e, 0) + c
            del acc[k]
            for tk, tm, tc in prod[1:]:
                s = acc.get(tk)
                if s is None:
                    acc[tk] = [tm, -c * tc]
                    heappush(heap, -tk)
                else:
                    v = s[1] - c * tc
                    if v:
                        s[1] = v
                    else:
                        del acc[tk]
            steps += 1
            if steps & 255 == 0:
                self.budget.check()
        rest = sorted(((kk, v[0], v[1]) for kk, v in acc.items()), key=lambda t: t[0], reverse=True)
        r = ring.decode(rest, p.table)
        # express the combination over the original (non-normalised) generators
        out = {}
        for e, c in combo.items():
            if not c:
                continue
            lc = Fraction(1)
            for lcf, kk in zip(self.lead_coeffs, e):
                lc *= lcf ** kk
            out[e] = ring.to_fraction(c) / lc
        return r, out

    def combination_poly(self, combo: dict) -> Polynomial:
        return Polynomial(self.F.label_table(), combo)


def subduct(p: Polynomial, F: SubalgebraGens) -> Polynomial:
    """Subduction remainder of ``p`` against ``F``.

    While the leading monomial of the work polynomial is a product of leading
    monomials of generators, that product of generators (scaled) is
    subtracted.  The result is zero or has a leading monomial outside the
    monoid of leading monomials of ``F``.
    """
    return Subductor(F).subduct(p)[0]


@dataclass(frozen=True)
class SagbiResult:
    passed: bool
    witness: Polynomial | None = None
    relation: Polynomial | None = None
    relations_checked: int = 0

    def __bool__(self) -> bool:
        return self.passed


def _split_binomial(g: Polynomial) -> tuple[tuple, tuple]:
    (u, cu), (v, cv) = g.terms.items()
    return (u, v) if cu > 0 else (v, u)


def lift_relation(sub: Subductor, g: Polynomial) -> Polynomial:
    """F^u / lc(F^u) - F^v / lc(F^v) for a binomial z^u - z^v."""
    u, v = _split_binomial(g)
    ring = sub.ring
    pu = ring.decode(sub.product(u), sub.F.table)
    pv = ring.decode(sub.product(v), sub.F.table)
    return pu - pv


def sagbi_check(F: SubalgebraGens, budget: Budget | None = None) -> SagbiResult:
    """Decide whether ``F`` is a SAGBI basis of the algebra it generates.

    Every binomial z^u - z^v of a generating set of the toric ideal of the
    initial exponents is lifted to a polynomial in the generators whose
    leading terms cancel; ``F`` is a SAGBI basis iff every lift subducts to
    zero.  On failure the first nonzero remainder (in basis order) is the
    witness: it lies in k[F] and its leading monomial is not a product of
    leading monomials of ``F``.
    """
    budget = budget or UNLIMITED
    sub = Subductor(F, budget)
    exps = sub.lead_exps
    zt = F.label_table()
    relations = []
    seen: dict = {}
    for i, e in enumerate(exps):
        if e in seen:
            relations.append(zt.var(F.labels[seen[e]]) - zt.var(F.labels[i]))
        else:
            seen[e] = i
    if relations:
        keep = sorted(seen.values())
        config = PointConfiguration(tuple(exps[i] for i in keep), tuple(F.labels[i] for i in keep))
        relations += [g.rename(zt) for g in toric_ideal(config, budget=budget).generators]
    else:
        relations = list(toric_ideal(initial_exponents(F), budget=budget).generators)
    for count, g in enumerate(relations, 1):
        if len(g) != 2:
            raise AssertionError(f"toric generator is not a binomial: {g}")
        lifted = lift_relation(sub, g)
        r, _ = sub.subduct(lifted)
        if not r.is_zero():
            return SagbiResult(False, r.monic(F.order), g, count)
    return SagbiResult(True, None, None, len(relations))


def _weighted_compositions(degs: Sequence[int], D: int):
    """All exponent vectors e with sum e_i * degs_i == D."""
    n = len(degs)
    e = [0] * n

    def rec(i: int, rest: int):
        if i == n:
            if rest == 0:
                yield tuple(e)
            return
        for k in range(rest // degs[i], -1, -1):
            e[i] = k
            yield from rec(i + 1, rest - k * degs[i])
        e[i] = 0

    yield from rec(0, D)


def subalgebra_graded_dim(F: SubalgebraGens, D: int) -> int:
    """Dimension of the degree-D part of k[F] (generators must be homogeneous).

    Spans all products of generators of total degree D and takes the rank by
    exact sparse elimination; each pivot is a distinct leading monomial.
    """
    if D < 0:
        return 0
    if D == 0:
        return 1
    for f in F.gens:
        if not f.is_homogeneous():
            raise ValueError("graded dimension needs homogeneous generators")
    degs = [f.degree() for f in F.gens]
    if any(d <= 0 for d in degs):
        raise ValueError("generators must have positive degree")
    sub = Subductor(F)
    ring = sub.ring
    pivots: dict = {}
    for e in _weighted_compositions(degs, D):
        acc = {k: [m, c] for k, m, c in sub.product(e)}
        heap = [-k for k in acc]
        heapify(heap)
        while heap:
            k = -heappop(heap)
            slot = acc.get(k)
            if slot is None:
                continue
            piv = pivots.get(k)
            if piv is None:
                pivots[k] = ring.monic(sorted(((kk, v[0], v[1]) for kk, v in acc.items()),
                                              key=lambda t: t[0], reverse=True))
                break
            c = slot[1]
            del acc[k]
            for tk, tm, tc in piv[1:]:
                s = acc.get(tk)
                if s is None:
                    acc[tk] = [tm, -c * tc]
                    heappush(heap, -tk)
                else:
                    v = s[1] - c * tc
                    if v:
                        s[1] = v
                    else:
                        del acc[tk]
    return len(pivots)


def leading_products(F: SubalgebraGens, D: int) -> set[tuple]:
    """Distinct products of leading monomials of total degree D (a monoid count)."""
    degs = [f.degree() for f in F.gens]
    exps = [leading_term(F.order, f)[1] for f in F.gens]
    out = set()
    for e in _weighted_compositions(degs, D):
        v = [0] * F.table.count
        for k, a in zip(e, exps):
            if k:
                for j, x in enumerate(a):
                    v[j] += k * x
        out.add(tuple(v))
    return out


__all__ = [
    "SubalgebraGens", "Subductor", "SagbiResult", "initial_exponents", "subduct",
    "sagbi_check", "subalgebra_graded_dim", "leading_products", "lift_relation",
]
