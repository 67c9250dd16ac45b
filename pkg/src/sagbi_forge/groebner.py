"""Ideals, Groebner bases, elimination and Krull dimension."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ._engine import QQ, UNLIMITED, Budget, Field, Ring, buchberger as _buchberger
from .errors import DimensionError, UnitIdealError
from .poly import (
    MonomialOrder, Polynomial, VariableTable, block_order, format_polynomial,
    grevlex, weight_order,
)


@dataclass(frozen=True)
class Ideal:
    """Ideal given by generators over one variable table."""

    table: VariableTable
    generators: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.table != self.table:
                raise DimensionError("generator over a different variable table")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, gens: Iterable[Polynomial], table: VariableTable | None = None) -> "Ideal":
        gens = list(gens)
        if table is None:
            if not gens:
                raise ValueError("cannot infer the table of an empty generator list")
            table = gens[0].table
        return cls(table, tuple(gens))

    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, sorted by increasing leading monomial."""

    table: VariableTable
    basis: tuple[Polynomial, ...]
    order: MonomialOrder
    field: Field = QQ

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def ideal(self) -> Ideal:
        return Ideal(self.table, self.basis)

    def leading_monomials(self) -> list[tuple]:
        return [max(g.terms, key=self.order.key) for g in self.basis]

    def is_unit(self) -> bool:
        return any(g.degree() == 0 for g in self.basis)

    def reduce(self, p: Polynomial) -> Polynomial:
        return reduce(p, list(self.basis), self.order, field=self.field)

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def to_strings(self) -> list[str]:
        return [format_polynomial(g) for g in self.basis]


@dataclass(frozen=True)
class AlgebraMap:
    """Map k[source] -> k[target] sending the i-th source variable to ``images[i]``."""

    source: VariableTable
    images: tuple[Polynomial, ...] = field(default=())

    def __post_init__(self):
        if len(self.images) != self.source.count:
            raise DimensionError("one image per source variable")
        if self.images:
            t = self.images[0].table
            if any(f.table != t for f in self.images):
                raise DimensionError("images must share one target table")

    @property
    def target(self) -> VariableTable:
        return self.images[0].table

    def __call__(self, p: Polynomial) -> Polynomial:
        return p.substitute(self.images, self.target)


def _encode_all(ring: Ring, polys: Sequence[Polynomial]) -> list:
    return [ring.encode(p) for p in polys]


def reduce(p: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder,
           field: Field = QQ) -> Polynomial:
    """Normal form of ``p`` modulo the divisor list (divisors tried in list order)."""
    if order.nvars != p.table.count:
        raise DimensionError("order does not match the table")
    ring = Ring(order, field)
    divs = [ring.monic(ring.encode(g)) for g in divisors]
    return ring.decode(ring.reduce(ring.encode(p), [d for d in divs if d]), p.table)


def buchberger(ideal: Ideal, order: MonomialOrder, field: Field = QQ,
               budget: Budget | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order``."""
    if order.nvars != ideal.table.count:
        raise DimensionError("order does not match the table")
    ring = Ring(order, field)
    gb = _buchberger(ring, _encode_all(ring, ideal.generators), budget or UNLIMITED)
    return GroebnerBasis(ideal.table, tuple(ring.decode(g, ideal.table) for g in gb), order, field)


groebner_basis = buchberger


def _merge_tables(first: VariableTable, second: VariableTable) -> tuple[VariableTable, dict]:
    """Concatenate two tables, renaming clashes in ``first``."""
    rename = {}
    taken = set(second.names)
    names = []
    for v in first.names:
        w = v
        while w in taken:
            w = "_" + w
        rename[v] = w
        taken.add(w)
        names.append(w)
    return VariableTable(names + list(second.names), list(first.roles) + list(second.roles)), rename


def eliminate(ideal: Ideal, drop: Iterable[str], keep_order: MonomialOrder | None = None,
              field: Field = QQ, budget: Budget | None = None,
              grading: Sequence[int] | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` intersected with k[kept variables].

    The dropped block is made dominant in a block order.  When ``grading``
    (positive per-variable weights) makes every generator homogeneous, that
    grading is compared first, so the run proceeds degree by degree; for
    homogeneous input this is still an elimination order.  The result is
    returned over the sub-table of kept variables under ``keep_order``
    (default: grevlex in table order).
    """
    table = ideal.table
    drop = set(drop)
    unknown = drop - set(table.names)
    if unknown:
        raise DimensionError(f"unknown variables to eliminate: {sorted(unknown)}")
    drop_idx = [i for i, v in enumerate(table.names) if v in drop]
    keep_idx = [i for i, v in enumerate(table.names) if v not in drop]
    keep_table = table.sub([table.names[i] for i in keep_idx]) if keep_idx else None
    if keep_order is None and keep_idx:
        keep_order = grevlex(len(keep_idx))
    if keep_idx and keep_order.nvars != len(keep_idx):
        raise DimensionError("keep_order must be an order on the kept variables")
    if ideal.is_zero() or not keep_idx:
        if not keep_idx:
            raise DimensionError("cannot eliminate every variable")
        return GroebnerBasis(keep_table, (), keep_order, field)
    if not drop_idx:
        return buchberger(Ideal(keep_table, tuple(g.rename(keep_table) for g in ideal.generators)),
                          keep_order, field, budget)

    elim = block_order([(drop_idx, grevlex(len(drop_idx))), (keep_idx, keep_order)])
    homogeneous = (grading is not None
                   and all(g.is_homogeneous(grading) for g in ideal.generators))
    order = weight_order(grading, elim) if homogeneous else elim
    gb = buchberger(ideal, order, field, budget)
    kept = []
    for g in gb.basis:
        if all(not any(e[i] for i in drop_idx) for e in g.terms):
            kept.append(g.rename(keep_table))
    result = GroebnerBasis(keep_table, tuple(kept), keep_order, field)
    if homogeneous:
        # the weighted run gives a basis for (grading, keep_order); re-sort under keep_order
        result = buchberger(Ideal(keep_table, tuple(kept)), keep_order, field, budget)
    return result


def kernel_of_map(phi: AlgebraMap, order: MonomialOrder | None = None, field: Field = QQ,
                  budget: Budget | None = None) -> Ideal:
    """Generators (a reduced Groebner basis) of the kernel of ``phi``.

    Eliminates the target variables from ``z_i - image_i``.  No saturation is
    needed: every target-free consequence of these relations is a relation
    among the images.  When all images are homogeneous the source variables
    get the image degrees as weights and the default kernel order is that
    weighted degree refined by grevlex.
    """
    src, tgt = phi.source, phi.target
    merged, rename = _merge_tables(tgt, src)
    images = [f.rename(merged, rename) for f in phi.images]
    gens = [merged.var(z) - f for z, f in zip(src.names, images)]
    homogeneous = all(f.is_homogeneous() and not f.is_zero() for f in phi.images)
    grading = None
    if homogeneous:
        degs = [f.degree() for f in phi.images]
        grading = [1] * tgt.count + degs
        if order is None:
            order = weight_order(degs, grevlex(src.count))
    if order is None:
        order = grevlex(src.count)
    gb = eliminate(Ideal(merged, tuple(gens)), [rename[v] for v in tgt.names], order,
                   field, budget, grading=grading)
    basis = tuple(g.rename(src) for g in gb.basis)
    return Ideal(src, basis)


def kernel_basis(phi: AlgebraMap, order: MonomialOrder | None = None, field: Field = QQ,
                 budget: Budget | None = None) -> GroebnerBasis:
    ker = kernel_of_map(phi, order, field, budget)
    if order is None:
        if all(f.is_homogeneous() for f in phi.images):
            order = weight_order([f.degree() for f in phi.images], grevlex(phi.source.count))
        else:
            order = grevlex(phi.source.count)
    return GroebnerBasis(phi.source, ker.generators, order, field)


def ideal_membership(p: Polynomial, ideal: Ideal | GroebnerBasis, order: MonomialOrder | None = None,
                     field: Field = QQ) -> bool:
    """True iff ``p`` reduces to zero modulo a Groebner basis of the ideal."""
    if isinstance(ideal, GroebnerBasis):
        gb = ideal
    else:
        gb = buchberger(ideal, order or grevlex(ideal.table.count), field)
    return gb.contains(p)


def ideals_equal(i1: Ideal, i2: Ideal, order: MonomialOrder | None = None,
                 field: Field = QQ, budget: Budget | None = None) -> bool:
    """True iff both ideals have the same reduced Groebner basis under one order."""
    if i1.table != i2.table:
        raise DimensionError("ideals over different tables")
    order = order or grevlex(i1.table.count)
    g1 = buchberger(i1, order, field, budget)
    g2 = buchberger(i2, order, field, budget)
    return g1.basis == g2.basis


def _min_hitting_set(sets: list[int], n: int) -> int:
    """Size of a smallest variable set meeting every support bitmask."""
    sets = sorted(set(sets), key=lambda s: bin(s).count("1"))
    minimal = []
    for s in sets:
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    best = [n]

    def search(chosen: int, size: int) -> None:
        if size >= best[0]:
            return
        for s in minimal:
            if not s & chosen:
                break
        else:
            best[0] = size
            return
        # branch on the members of the first unhit support
        bits = s
        while bits:
            low = bits & -bits
            search(chosen | low, size + 1)
            bits ^= low

    search(0, 0)
    return best[0]


def quotient_dimension(ideal: Ideal | GroebnerBasis, order: MonomialOrder | None = None,
                       field: Field = QQ, budget: Budget | None = None) -> int:
    """Krull dimension of k[table]/I.

    The largest set U of variables such that no leading monomial of the
    Groebner basis lies in k[U]; equivalently n minus a minimum hitting set
    of the leading-monomial supports.
    """
    if isinstance(ideal, GroebnerBasis):
        gb = ideal
    else:
        gb = buchberger(ideal, order or grevlex(ideal.table.count), field, budget)
    n = gb.table.count
    if gb.is_unit():
        raise UnitIdealError("the ideal is the unit ideal")
    if not gb.basis:
        return n
    supports = []
    for e in gb.leading_monomials():
        bits = 0
        for i, x in enumerate(e):
            if x:
                bits |= 1 << i
        supports.append(bits)
    return n - _min_hitting_set(supports, n)
