"""Toric ideals of point configurations, lattice ranks and monoid counts."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._engine import QQ, Budget, Field
from .errors import DimensionError
from .groebner import AlgebraMap, Ideal, kernel_of_map
from .poly import MonomialOrder, Polynomial, VariableTable


@dataclass(frozen=True)
class PointConfiguration:
    """Distinct nonnegative integer vectors of one length, one label per point."""

    points: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        pts = tuple(tuple(int(x) for x in p) for p in self.points)
        labels = tuple(self.labels)
        if len(pts) != len(labels):
            raise DimensionError("one label per point")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        if pts:
            n = len(pts[0])
            if any(len(p) != n for p in pts):
                raise DimensionError("points of different lengths")
        if any(x < 0 for p in pts for x in p):
            raise ValueError("points must be nonnegative")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def __len__(self) -> int:
        return len(self.points)

    def table(self) -> VariableTable:
        return VariableTable(self.labels, ["z"] * len(self.labels))

    def as_set(self) -> set[tuple[int, ...]]:
        return set(self.points)

    def homogenized(self) -> "PointConfiguration":
        """Append a constant coordinate 1, so the toric ideal becomes homogeneous.

        Needed when the configuration contains the origin: otherwise its
        variable maps to 1 and ``z - 1`` lands in the toric ideal.
        """
        return PointConfiguration(tuple(p + (1,) for p in self.points), self.labels)

    def to_json(self) -> str:
        return json.dumps({"points": [list(p) for p in self.points], "labels": list(self.labels)})

    @classmethod
    def from_json(cls, text: str) -> "PointConfiguration":
        data = json.loads(text)
        return cls(tuple(tuple(p) for p in data["points"]), tuple(data["labels"]))


def monomial_map(config: PointConfiguration) -> AlgebraMap:
    """z_i -> t^{a_i} over auxiliary variables t1..tn."""
    aux = VariableTable([f"t{k}" for k in range(1, config.dim + 1)], ["aux"] * config.dim)
    images = tuple(Polynomial.monomial(aux, p) for p in config.points)
    return AlgebraMap(config.table(), images)


def toric_ideal(config: PointConfiguration, order: MonomialOrder | None = None,
                field: Field = QQ, budget: Budget | None = None) -> Ideal:
    """Reduced Groebner basis of the kernel of z_i -> t^{a_i}.

    Computed by elimination; the images are monomials, so the graded trick in
    :func:`kernel_of_map` applies with z_i weighted by the degree of a_i.
    A zero point would give the non-homogeneous relation z_i - 1.
    """
    phi = monomial_map(config)
    return kernel_of_map(phi, order, field, budget)


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q (equivalently, rank of the Z-span) of integer vectors."""
    mat = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not mat:
        return 0
    rank = 0
    ncols = len(mat[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        for i in range(rank + 1, len(mat)):
            if mat[i][col]:
                f = mat[i][col] / pr[col]
                mat[i] = [a - f * b for a, b in zip(mat[i], pr)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def lattice_rank(config: PointConfiguration | Sequence[Sequence[int]]) -> int:
    pts = config.points if isinstance(config, PointConfiguration) else config
    return integer_rank(pts)


def monoid_count_at_degree(config: PointConfiguration, grading: Sequence[int], D: int) -> int:
    """Number of distinct sums of points (with repetition) of total grading D."""
    if len(grading) != len(config):
        raise DimensionError("one degree per point")
    if any(g <= 0 for g in grading):
        raise ValueError("degrees must be positive")
    if D < 0:
        return 0
    zero = (0,) * config.dim
    levels: list[set] = [{zero}]
    for d in range(1, D + 1):
        level = set()
        for p, g in zip(config.points, grading):
            if g <= d:
                for v in levels[d - g]:
                    level.add(tuple(a + b for a, b in zip(v, p)))
        levels.append(level)
    return len(levels[D])
