"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients over a fixed :class:`VariableTable`.
Monomial orders are described by :class:`MonomialOrder`; every order kind is
realised internally as a nonnegative integer matrix whose rows are compared
lexicographically, which is what the Groebner engine consumes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DimensionError, EmptyInputError, ParseError

Exps = tuple  # exponent vector: tuple of nonnegative ints

LT, EQ, GT = -1, 0, 1


class VariableTable:
    """Ordered, duplicate-free list of variable names.

    The list order is the ranking used by lexicographic comparisons: the
    first name is the largest variable.
    """

    __slots__ = ("names", "roles", "_index")

    def __init__(self, names: Iterable[str], roles: Iterable[str] | None = None):
        names = tuple(names)
        if not names:
            raise DimensionError("a variable table needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be pairwise distinct")
        roles = tuple(roles) if roles is not None else ("aux",) * len(names)
        if len(roles) != len(names):
            raise DimensionError("one role per variable")
        self.names = names
        self.roles = roles
        self._index = {v: i for i, v in enumerate(names)}

    @property
    def count(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VariableTable) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VariableTable({list(self.names)!r})"

    def var(self, name: str) -> "Polynomial":
        return Polynomial.variable(self, name)

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.names]

    def sub(self, names: Sequence[str]) -> "VariableTable":
        """Sub-table on ``names`` (in the given order), roles preserved."""
        return VariableTable(names, [self.roles[self.index(v)] for v in names])

    @classmethod
    def sab(cls, a: int, b: int) -> "VariableTable":
        """x_1..x_a, x'_1..x'_b, y'_1..y'_a, y_1..y_b (primes spelled ``p``)."""
        names = ([f"x{i}" for i in range(1, a + 1)]
                 + [f"xp{j}" for j in range(1, b + 1)]
                 + [f"yp{i}" for i in range(1, a + 1)]
                 + [f"y{j}" for j in range(1, b + 1)])
        roles = ["x"] * a + ["x'"] * b + ["y'"] * a + ["y"] * b
        return cls(names, roles)

    @classmethod
    def graph(cls, d: int) -> "VariableTable":
        """x_1..x_d, y_1..y_d."""
        names = [f"x{i}" for i in range(1, d + 1)] + [f"y{i}" for i in range(1, d + 1)]
        return cls(names, ["x"] * d + ["y"] * d)


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    num, den = getattr(c, "numerator", None), getattr(c, "denominator", None)
    if num is not None and den is not None:
        return Fraction(int(num), int(den))
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact coefficient: {c!r}")


def _grlex_key(e: Exps):
    return (sum(e), e)


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("table", "_terms", "_hash")

    def __init__(self, table: VariableTable, terms: Mapping[Exps, object] | None = None):
        self.table = table
        n = table.count
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise DimensionError(f"exponent vector {e} has length {len(e)}, table has {n}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = _frac(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self._terms = {e: clean[e] for e in sorted(clean, key=_grlex_key, reverse=True) if clean[e]}
        self._hash = None

    @classmethod
    def _raw(cls, table: VariableTable, terms: dict) -> "Polynomial":
        # trusted constructor: terms already clean (tuple keys, nonzero Fractions)
        p = cls.__new__(cls)
        p.table = table
        p._terms = {e: terms[e] for e in sorted(terms, key=_grlex_key, reverse=True)}
        p._hash = None
        return p

    @classmethod
    def zero(cls, table: VariableTable) -> "Polynomial":
        return cls._raw(table, {})

    @classmethod
    def constant(cls, table: VariableTable, c=1) -> "Polynomial":
        return cls(table, {(0,) * table.count: c})

    @classmethod
    def monomial(cls, table: VariableTable, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(table, {tuple(exps): c})

    @classmethod
    def variable(cls, table: VariableTable, name: str) -> "Polynomial":
        e = [0] * table.count
        e[table.index(name)] = 1
        return cls._raw(table, {tuple(e): Fraction(1)})

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exps, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[Exps, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self, grading: Sequence[int] | None = None) -> bool:
        if grading is None:
            degs = {sum(e) for e in self._terms}
        else:
            degs = {sum(g * x for g, x in zip(grading, e)) for e in self._terms}
        return len(degs) <= 1

    def support(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return {self.table.names[i] for i in used}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if other.table != self.table:
            raise DimensionError("polynomials live over different variable tables")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.table, _frac(other))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.table, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = _frac(other)
            if not c:
                return Polynomial.zero(self.table)
            return Polynomial._raw(self.table, {e: c * v for e, v in self._terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.table, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.table, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        return self * c

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.table == other.table and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {(0,) * self.table.count: Fraction(other)}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.table, frozenset(self._terms.items())))
        return self._hash

    # -- substitution -------------------------------------------------------
    def substitute(self, images: Sequence["Polynomial"] | Mapping[str, "Polynomial"],
                   target: VariableTable | None = None) -> "Polynomial":
        """Replace every variable by a polynomial in a common target table.

        ``images`` is either one polynomial per variable (table order) or a
        name -> polynomial mapping; unmapped variables must then also exist in
        the target table and are carried over unchanged.
        """
        if isinstance(images, Mapping):
            if target is None:
                target = next(iter(images.values())).table
            seq = []
            for v in self.table.names:
                seq.append(images[v] if v in images else target.var(v))
            images = seq
        images = list(images)
        if len(images) != self.table.count:
            raise DimensionError("need one image per variable")
        if target is None:
            if not images:
                raise EmptyInputError("no images given")
            target = images[0].table
        powers: dict = {}

        def power(i: int, k: int) -> Polynomial:
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
            return powers[key]

        out = Polynomial.zero(target)
        for e, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def rename(self, target: VariableTable, mapping: Mapping[str, str] | None = None) -> "Polynomial":
        """Embed into ``target`` by variable name (optionally through ``mapping``)."""
        mapping = mapping or {}
        pos = []
        for v in self.table.names:
            w = mapping.get(v, v)
            pos.append(target.index(w) if w in target else None)
        n = target.count
        out = {}
        for e, c in self._terms.items():
            f = [0] * n
            for i, x in enumerate(e):
                if x:
                    if pos[i] is None:
                        raise KeyError(f"variable {self.table.names[i]!r} missing from the target table")
                    f[pos[i]] += x
            out[tuple(f)] = c
        return Polynomial._raw(target, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def monic(self, order: "MonomialOrder") -> "Polynomial":
        c, _ = leading_term(order, self)
        return self * (1 / c)

    # -- text ---------------------------------------------------------------
    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# text format

def _format_monomial(table: VariableTable, e: Exps) -> str:
    parts = []
    for name, k in zip(table.names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if not p._terms:
        return "0"
    out = []
    for e, c in p._terms.items():
        mono = _format_monomial(p.table, e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def parse_polynomial(text: str, table: VariableTable) -> Polynomial:
    """Parse a signed sum of terms such as ``2*x1*y2^3 - 1/2*xp1``."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty polynomial text")
    names = sorted(table.names, key=len, reverse=True)
    var_re = "|".join(re.escape(v) for v in names)
    token = re.compile(rf"(?P<num>\d+(?:/\d+)?)|(?P<var>{var_re})|(?P<op>[-+*^])")
    toks = []
    pos = 0
    while pos < len(s):
        m = token.match(s, pos)
        if not m:
            raise ParseError(f"unexpected text at {pos}: {s[pos:pos + 10]!r}")
        toks.append((m.lastgroup, m.group()))
        pos = m.end()

    n = table.count
    result: dict = {}
    i = 0
    while i < len(toks):
        sign = 1
        while i < len(toks) and toks[i][0] == "op" and toks[i][1] in "+-":
            if toks[i][1] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        exps = [0] * n
        seen = False
        while i < len(toks):
            kind, val = toks[i]
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "var":
                k = 1
                if i + 1 < len(toks) and toks[i + 1] == ("op", "^"):
                    if i + 2 >= len(toks) or toks[i + 2][0] != "num" or "/" in toks[i + 2][1]:
                        raise ParseError(f"bad exponent after {val}")
                    k = int(toks[i + 2][1])
                    i += 2
                exps[table.index(val)] += k
                i += 1
            else:
                raise ParseError(f"unexpected operator {val!r}")
            seen = True
            if i < len(toks) and toks[i] == ("op", "*"):
                i += 1
                if i >= len(toks):
                    raise ParseError("dangling '*'")
                continue
            if i < len(toks) and toks[i][0] == "op":
                break
        if not seen:
            raise ParseError("missing term")
        e = tuple(exps)
        result[e] = result.get(e, 0) + coeff
    return Polynomial(table, result)


# ---------------------------------------------------------------------------
# monomial orders

_KINDS = ("lex", "grlex", "grevlex", "weight", "block")


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative well-order on exponent vectors of length ``nvars``.

    ``ranking`` lists variable indices from largest to smallest (lex, grlex,
    grevlex). ``weight`` orders compare by the weight first and break ties with
    ``tiebreak``. ``block`` orders compare block by block, each block carrying
    its own inner order over the block's local indices.
    """

    kind: str
    nvars: int
    ranking: tuple[int, ...] = ()
    weight: tuple[int, ...] = ()
    tiebreak: "MonomialOrder | None" = None
    blocks: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind in ("lex", "grlex", "grevlex"):
            if sorted(self.ranking) != list(range(self.nvars)):
                raise ValueError("ranking must be a permutation of the variables")
        if self.kind == "weight":
            if len(self.weight) != self.nvars:
                raise DimensionError("weight length must equal the number of variables")
            if any(w < 0 for w in self.weight):
                raise ValueError("weights must be nonnegative")
            if self.tiebreak is None or self.tiebreak.nvars != self.nvars:
                raise ValueError("weight order needs a tiebreak order on the same variables")
        if self.kind == "block":
            seen = sorted(i for idx, _ in self.blocks for i in idx)
            if seen != list(range(self.nvars)):
                raise ValueError("blocks must partition the variables")
            for idx, inner in self.blocks:
                if inner.nvars != len(idx):
                    raise DimensionError("inner block order has the wrong size")

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Nonnegative integer rows; the order is lex on ``M @ e``."""
        n = self.nvars
        if self.kind == "lex":
            return tuple(tuple(int(j == v) for j in range(n)) for v in self.ranking)
        if self.kind == "grlex":
            ones = (1,) * n
            return (ones,) + tuple(tuple(int(j == v) for j in range(n)) for v in self.ranking[:-1])
        if self.kind == "grevlex":
            rows = []
            for k in range(n):
                top = set(self.ranking[: n - k])
                rows.append(tuple(int(j in top) for j in range(n)))
            return tuple(rows)
        if self.kind == "weight":
            return (tuple(self.weight),) + self.tiebreak.matrix
        rows = []
        for idx, inner in self.blocks:
            for r in inner.matrix:
                full = [0] * n
                for local, glob in enumerate(idx):
                    full[glob] = r[local]
                rows.append(tuple(full))
        return tuple(rows)

    @cached_property
    def _sparse_rows(self):
        return tuple(tuple((j, c) for j, c in enumerate(r) if c) for r in self.matrix)

    def key(self, e: Sequence[int]) -> tuple[int, ...]:
        """Sort key: ``key(u) < key(v)`` iff ``u < v``."""
        if len(e) != self.nvars:
            raise DimensionError(f"exponent vector of length {len(e)} for an order on {self.nvars} variables")
        return tuple(sum(c * e[j] for j, c in row) for row in self._sparse_rows)

    def is_elimination_for(self, drop: Iterable[int]) -> bool:
        drop = set(drop)
        return self.kind == "block" and set(self.blocks[0][0]) == drop


def lex(n: int, ranking: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("lex", n, tuple(ranking if ranking is not None else range(n)))


def grlex(n: int, ranking: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("grlex", n, tuple(ranking if ranking is not None else range(n)))


def grevlex(n: int, ranking: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("grevlex", n, tuple(ranking if ranking is not None else range(n)))


def weight_order(weight: Sequence[int], tiebreak: MonomialOrder | None = None) -> MonomialOrder:
    w = tuple(int(x) for x in weight)
    return MonomialOrder("weight", len(w), weight=w, tiebreak=tiebreak or grevlex(len(w)))


def block_order(blocks: Sequence[tuple[Sequence[int], MonomialOrder]]) -> MonomialOrder:
    n = sum(len(idx) for idx, _ in blocks)
    return MonomialOrder("block", n, blocks=tuple((tuple(idx), o) for idx, o in blocks))


def compare(order: MonomialOrder, u: Sequence[int], v: Sequence[int]) -> int:
    """Return ``GT`` (1), ``EQ`` (0) or ``LT`` (-1)."""
    if len(u) != len(v):
        raise DimensionError("exponent vectors of different lengths")
    ku, kv = order.key(u), order.key(v)
    return (ku > kv) - (ku < kv)


def leading_term(order: MonomialOrder, p: Polynomial) -> tuple[Fraction, Exps]:
    """Order-maximal term of ``p`` as ``(coefficient, exponents)``."""
    if p.is_zero():
        raise EmptyInputError("the zero polynomial has no leading term")
    if order.nvars != p.table.count:
        raise DimensionError("order and polynomial have different numbers of variables")
    e = max(p.terms, key=order.key)
    return p.terms[e], e


def leading_monomial(order: MonomialOrder, p: Polynomial) -> Exps:
    return leading_term(order, p)[1]


def weight_of(w: Sequence[int], e: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(w, e))


def initial_form(w: Sequence[int], p: Polynomial) -> Polynomial:
    """Sum of the terms of ``p`` of maximal ``w``-weight."""
    if len(w) != p.table.count:
        raise DimensionError("weight vector length differs from the table size")
    if p.is_zero():
        return p
    weights = {e: weight_of(w, e) for e in p.terms}
    top = max(weights.values())
    return Polynomial._raw(p.table, {e: c for e, c in p.terms.items() if weights[e] == top})


def build_order_3_1(a: int, b: int) -> MonomialOrder:
    """Graded lex on S_{a,b} with x_1 > .. > x_a > x'_1 > .. > x'_b > y'_1 > .. > y'_a > y_1 > .. > y_b."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    return grlex(2 * (a + b))


def weight_vector_w(a: int, b: int) -> tuple[int, ...]:
    """Powers of two ``2^(N-1), .., 2, 1`` on the S_{a,b} variables, N = 2(a+b).

    Each entry exceeds the sum of all later ones, so on squarefree monomials of
    equal degree the weight agrees with the graded lex order above.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    n = 2 * (a + b)
    return tuple(1 << (n - r) for r in range(1, n + 1))


def sum_polys(table: VariableTable, polys: Iterable[Polynomial]) -> Polynomial:
    out: dict = {}
    for p in polys:
        for e, c in p.terms.items():
            out[e] = out.get(e, 0) + c
    return Polynomial._raw(table, {e: c for e, c in out.items() if c})


def product(table: VariableTable, polys: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.constant(table, 1)
    for p in polys:
        out = out * p
    return out
