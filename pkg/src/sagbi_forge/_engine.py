"""Packed-integer kernel shared by the Groebner and subduction code.

Monomials are packed into a single Python int with 16-bit exponent fields
(top bit of each field is a guard bit kept at zero), so multiplication is
addition and divisibility is one subtraction plus a mask test.  The order key
of a monomial is a second int, linear in the exponents, built from the
order's nonnegative row matrix; larger key means larger monomial.

A polynomial in this layer is a list of ``(key, mono, coeff)`` triples sorted
by decreasing key.  Coefficients are ``gmpy2.mpq`` over the rationals or ints
in ``[0, p)`` over a prime field.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush

import gmpy2

from .errors import BudgetExceeded
from .poly import MonomialOrder, Polynomial, VariableTable

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXP = (1 << (FIELD_BITS - 1)) - 1


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals (``prime is None``) or GF(prime)."""

    prime: int | None = None

    @property
    def name(self) -> str:
        return "QQ" if self.prime is None else f"GF({self.prime})"

    @property
    def cli_name(self) -> str:
        return "q" if self.prime is None else f"fp:{self.prime}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls()
        if text.startswith("fp:"):
            p = int(text[3:])
            if p < 2 or not gmpy2.is_prime(p):
                raise ValueError(f"{p} is not prime")
            return cls(p)
        raise ValueError(f"unknown field {text!r}; use 'q' or 'fp:<prime>'")


QQ = Field()
DEFAULT_PRIME = 32003


class Budget:
    """Wall-clock deadline and optional degree cap for long computations."""

    def __init__(self, seconds: float | None = None, degree_cap: int | None = None):
        self.seconds = seconds
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.degree_cap = degree_cap

    def check(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time budget of {self.seconds}s exceeded")

    def check_degree(self, deg: int) -> None:
        if self.degree_cap is not None and deg > self.degree_cap:
            raise BudgetExceeded(f"degree cap {self.degree_cap} exceeded (degree {deg})")


UNLIMITED = Budget()


class Ring:
    """Packing context for one variable table, monomial order and field."""

    def __init__(self, order: MonomialOrder, field: Field = QQ):
        self.order = order
        self.field = field
        self.p = field.prime
        self.n = n = order.nvars
        rows = order.matrix
        widths = [max(max(r), 1).bit_length() + 24 for r in rows]
        offsets = []
        off = 0
        for w in reversed(widths):
            offsets.append(off)
            off += w
        offsets.reverse()
        self.key_weights = tuple(
            sum(r[i] << o for r, o in zip(rows, offsets)) for i in range(n))
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(n))
        self.shifts = tuple(FIELD_BITS * i for i in range(n))
        self.deg_weights = tuple(1 << s for s in self.shifts)
        self.one = 1 if self.p else gmpy2.mpq(1)

    # -- monomials ----------------------------------------------------------
    def pack(self, e) -> int:
        m = 0
        for s, x in zip(self.shifts, e):
            if x:
                if x > MAX_EXP:
                    raise OverflowError("exponent too large for the packed layout")
                m |= x << s
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> s) & FIELD_MASK for s in self.shifts)

    def key(self, e) -> int:
        return sum(x * k for x, k in zip(e, self.key_weights) if x)

    def divides(self, d: int, m: int) -> bool:
        g = self.guard
        return ((m | g) - d) & g == g

    def lcm(self, m1: int, m2: int) -> tuple[int, int]:
        e = tuple(max(a, b) for a, b in zip(self.unpack(m1), self.unpack(m2)))
        return self.key(e), self.pack(e)

    def support(self, m: int) -> int:
        bits = 0
        for i, s in enumerate(self.shifts):
            if (m >> s) & FIELD_MASK:
                bits |= 1 << i
        return bits

    def degree(self, m: int) -> int:
        return sum(self.unpack(m))

    # -- coefficients -------------------------------------------------------
    def coeff(self, c) -> object:
        c = Fraction(c)
        if self.p:
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return gmpy2.mpq(c.numerator, c.denominator)

    def to_fraction(self, c) -> Fraction:
        if self.p:
            c = int(c)
            return Fraction(c - self.p if c > self.p // 2 else c)
        return Fraction(int(c.numerator), int(c.denominator))

    def inv(self, c):
        if self.p:
            return pow(int(c), -1, self.p)
        return 1 / c

    # -- polynomials --------------------------------------------------------
    def encode(self, poly: Polynomial) -> list:
        out = [(self.key(e), self.pack(e), self.coeff(c)) for e, c in poly.terms.items()]
        out = [t for t in out if t[2]]
        out.sort(key=lambda t: t[0], reverse=True)
        return out

    def decode(self, terms: list, table: VariableTable) -> Polynomial:
        return Polynomial(table, {self.unpack(m): self.to_fraction(c) for _, m, c in terms})

    def monic(self, terms: list) -> list:
        if not terms:
            return terms
        lc = terms[0][2]
        if lc == 1:
            return terms
        inv = self.inv(lc)
        p = self.p
        if p:
            return [(k, m, c * inv % p) for k, m, c in terms]
        return [(k, m, c * inv) for k, m, c in terms]

    def reduce(self, terms, divisors: list, budget: Budget = UNLIMITED, full: bool = True) -> list:
        """Remainder of ``terms`` on division by monic ``divisors``.

        Divisors are tried in list order; the largest remaining term is
        treated first.  ``terms`` may be a list of triples or a dict
        ``key -> [mono, coeff]`` (consumed).
        """
        p = self.p
        g = self.guard
        if isinstance(terms, dict):
            acc = terms
        else:
            acc = {k: [m, c] for k, m, c in terms}
        heap = [-k for k in acc]
        heapify(heap)
        leads = [(d[0][0], d[0][1], d) for d in divisors if d]
        out = []
        steps = 0
        while heap:
            k = -heappop(heap)
            t = acc.pop(k, None)
            if t is None:
                continue
            m, c = t
            for lk, lm, d in leads:
                if ((m | g) - lm) & g == g:
                    dk = k - lk
                    dm = m - lm
                    it = iter(d)
                    next(it)
                    for gk, gm, gc in it:
                        nk = gk + dk
                        slot = acc.get(nk)
                        if slot is None:
                            acc[nk] = [gm + dm, (-c * gc) % p if p else -c * gc]
                            heappush(heap, -nk)
                        else:
                            v = (slot[1] - c * gc) % p if p else slot[1] - c * gc
                            if v:
                                slot[1] = v
                            else:
                                del acc[nk]
                    break
            else:
                out.append((k, m, c))
                if not full:
                    rest = sorted(((kk, v[0], v[1]) for kk, v in acc.items()),
                                  key=lambda t: t[0], reverse=True)
                    return out + rest
            steps += 1
            if steps & 1023 == 0:
                budget.check()
        return out

    def mul_term(self, terms: list, k: int, m: int, c) -> list:
        p = self.p
        if p:
            return [(tk + k, tm + m, tc * c % p) for tk, tm, tc in terms]
        return [(tk + k, tm + m, tc * c) for tk, tm, tc in terms]

    def spoly(self, f: list, g: list) -> dict:
        """S-polynomial of two monic polynomials, as a reduction accumulator."""
        lk, lm = self.lcm(f[0][1], g[0][1])
        fk, fm = lk - f[0][0], lm - f[0][1]
        gk, gm = lk - g[0][0], lm - g[0][1]
        p = self.p
        acc = {}
        for tk, tm, tc in f[1:]:
            acc[tk + fk] = [tm + fm, tc]
        for tk, tm, tc in g[1:]:
            nk = tk + gk
            slot = acc.get(nk)
            if slot is None:
                acc[nk] = [tm + gm, (-tc) % p if p else -tc]
            else:
                v = (slot[1] - tc) % p if p else slot[1] - tc
                if v:
                    slot[1] = v
                else:
                    del acc[nk]
        return acc


def buchberger(ring: Ring, polys: list, budget: Budget = UNLIMITED) -> list:
    """Reduced Groebner basis of the encoded polynomials.

    Pair selection follows the normal strategy (smallest lcm under the order
    first) with the Gebauer-Moeller installation of the product and chain
    criteria.  The output is sorted by increasing leading monomial.
    """
    basis: list = []     # all polynomials ever added (monic)
    alive: list = []     # indices whose leading monomials form a minimal set
    pairs: list = []     # heap of (lcm_key, seq, i, j)
    supports: list = []
    seq = 0

    def lead(i):
        return basis[i][0]

    def update(h: int) -> None:
        nonlocal seq, pairs, alive
        hm = lead(h)[1]
        hs = supports[h]
        cand = []
        for g in alive:
            lk, lm = ring.lcm(hm, lead(g)[1])
            cand.append((g, lk, lm, (hs & supports[g]) == 0))
        # chain criterion among the new pairs themselves
        kept = []
        for idx, (g, lk, lm, disjoint) in enumerate(cand):
            if disjoint:
                kept.append((g, lk, lm, disjoint))
                continue
            redundant = False
            for jdx, (g2, lk2, lm2, _) in enumerate(cand):
                if jdx == idx:
                    continue
                if ring.divides(lm2, lm) and (lm2 != lm or cand[jdx][3] or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                kept.append((g, lk, lm, disjoint))
        # old pairs made redundant by the new lead
        old = []
        for entry in pairs:
            lk, _, i, j, lm = entry
            if ring.divides(hm, lm):
                li = ring.lcm(lead(i)[1], hm)[1]
                lj = ring.lcm(lead(j)[1], hm)[1]
                if li != lm and lj != lm:
                    continue
            old.append(entry)
        for g, lk, lm, disjoint in kept:
            if disjoint:
                continue  # product criterion
            seq += 1
            old.append((lk, seq, g, h, lm))
        heapify(old)
        pairs = old
        alive = [g for g in alive if not ring.divides(hm, lead(g)[1])] + [h]

    def add(poly: list) -> None:
        poly = ring.monic(poly)
        basis.append(poly)
        supports.append(ring.support(poly[0][1]))
        update(len(basis) - 1)

    for f in sorted((f for f in polys if f), key=lambda t: t[0][0]):
        r = ring.reduce(f, [basis[i] for i in alive], budget)
        if r:
            add(r)

    while pairs:
        budget.check()
        lk, _, i, j, lm = heappop(pairs)
        budget.check_degree(ring.degree(lm))
        s = ring.spoly(basis[i], basis[j])
        if not s:
            continue
        r = ring.reduce(s, [basis[k] for k in alive], budget)
        if r:
            add(r)

    return interreduce(ring, [basis[i] for i in alive], budget)


def interreduce(ring: Ring, polys: list, budget: Budget = UNLIMITED) -> list:
    """Reduce a Groebner basis with minimal leading monomials to reduced form."""
    polys = sorted((ring.monic(p) for p in polys if p), key=lambda t: t[0][0])
    minimal = []
    for f in polys:
        if not any(ring.divides(g[0][1], f[0][1]) for g in minimal):
            minimal.append(f)
    minimal = [f for f in minimal
               if not any(g is not f and ring.divides(g[0][1], f[0][1]) for g in minimal)]
    out = []
    for idx, f in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = ring.reduce(f[1:], others, budget)
        out.append([f[0]] + tail)
    out.sort(key=lambda t: t[0][0])
    return out
