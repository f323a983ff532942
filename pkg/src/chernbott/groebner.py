"""Buchberger's algorithm over Q (degrevlex) and the ideals ``I_{k,n}``.

Internally polynomials are kept as primitive integer polynomials (dicts
``exponent -> int`` with content removed) so that reduction never touches
fractions; bases are returned monic over Q.

The ideal ``I_{k,n}`` is generated by the ``2^k - 1`` powers
``(x_{i_1} + ... + x_{i_j})^(j(n-j)+1)`` over nonempty ``{i_1..i_j}`` in
``{1..k}``.  Its quotient is Artinian (``x_i^n`` is a generator), so the
Hilbert series is a finite vector obtained by counting standard monomials.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from .errors import ArgumentError
from .polynomial import (Monomial, RationalPolynomial, degrevlex_key, divides,
                         monomials_of_degree)

IntPoly = dict  # Monomial -> int


# -- integer-polynomial helpers ---------------------------------------------

def _to_primitive(p: RationalPolynomial) -> IntPoly:
    den = lcm(*(c.denominator for c in p.terms.values()))
    q = {m: int(c * den) for m, c in p.terms.items()}
    return _primitive(q)


def _primitive(q: IntPoly) -> IntPoly:
    g = 0
    for v in q.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = max(q, key=degrevlex_key)
    if q[lead] < 0:
        g = -g
    if g == 1:
        return q
    return {m: v // g for m, v in q.items()}


def _lm(q: IntPoly) -> Monomial:
    return max(q, key=degrevlex_key)


def _shift(m: Monomial, s: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m, s))


def _quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _lcm_monomial(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass
class _Element:
    lm: Monomial
    lc: int
    poly: IntPoly


def _reduce(p: IntPoly, basis: Sequence[_Element], full: bool = True) -> tuple[IntPoly, Fraction]:
    """Reduce ``p`` modulo ``basis``.

    Returns ``(r, s)`` with ``r / s`` the remainder of ``p`` (``s`` is the
    accumulated scaling from fraction-free steps).  With ``full=False`` only
    the leading term is reduced away.
    """
    p = dict(p)
    rem: IntPoly = {}
    scale = Fraction(1)
    steps = 0
    while p:
        lt = max(p, key=degrevlex_key)
        c = p[lt]
        for el in basis:
            if divides(el.lm, lt):
                g = gcd(c, el.lc)
                a, b = el.lc // g, c // g
                if a < 0:
                    a, b = -a, -b
                if a != 1:
                    p = {m: a * v for m, v in p.items()}
                    rem = {m: a * v for m, v in rem.items()}
                    scale *= a
                s = _quotient(lt, el.lm)
                for m, v in el.poly.items():
                    mm = _shift(m, s)
                    nv = p.get(mm, 0) - b * v
                    if nv:
                        p[mm] = nv
                    else:
                        del p[mm]
                steps += 1
                if steps % 8 == 0 and p:
                    g = 0
                    for v in p.values():
                        g = gcd(g, v)
                    for v in rem.values():
                        g = gcd(g, v)
                    if g > 1:
                        p = {m: v // g for m, v in p.items()}
                        rem = {m: v // g for m, v in rem.items()}
                        scale /= g
                break
        else:
            if not full:
                rem.update(p)
                return rem, scale
            rem[lt] = c
            del p[lt]
    return rem, scale


# -- public types -------------------------------------------------------------

@dataclass
class GroebnerBasis:
    """Reduced Groebner basis: monic polynomials sorted by leading monomial."""

    polys: list[RationalPolynomial]
    nvars: int
    order: str = "degrevlex"
    reduced: bool = True
    _int: list[_Element] | None = field(default=None, repr=False, compare=False)

    def leading_monomials(self) -> list[Monomial]:
        return [p.leading_monomial() for p in self.polys]

    def _elements(self) -> list[_Element]:
        if self._int is None:
            els = []
            for p in self.polys:
                q = _to_primitive(p)
                lm = _lm(q)
                els.append(_Element(lm, q[lm], q))
            self._int = els
        return self._int

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


@dataclass
class IdealSpec:
    k: int
    n: int
    subsets: list[tuple[int, ...]]
    generators: list[RationalPolynomial]


# -- Buchberger -----------------------------------------------------------------

def buchberger(gens: Sequence[RationalPolynomial]) -> GroebnerBasis:
    """Reduced degrevlex Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy (smallest lcm first) with the coprime and
    chain criteria.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        raise ArgumentError("need at least one nonzero generator")
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise ArgumentError("generators have different variable counts")

    G: list[_Element] = []
    pairs: set[tuple[int, int]] = set()
    queue: list[tuple] = []

    def add(q: IntPoly) -> None:
        q = _primitive(q)
        lm = _lm(q)
        G.append(_Element(lm, q[lm], q))
        new = len(G) - 1
        for i in range(new):
            pairs.add((i, new))
            L = _lcm_monomial(G[i].lm, lm)
            heapq.heappush(queue, (sum(L), degrevlex_key(L), i, new))

    for g in gens:
        r, _ = _reduce(_to_primitive(g), G)
        if r:
            add(r)

    def chain_skip(i: int, j: int, L: Monomial) -> bool:
        for l in range(len(G)):
            if l in (i, j):
                continue
            if ((min(i, l), max(i, l)) not in pairs and (min(j, l), max(j, l)) not in pairs
                    and divides(G[l].lm, L)):
                return True
        return False

    while queue:
        _, _, i, j = heapq.heappop(queue)
        pairs.discard((i, j))
        fi, fj = G[i], G[j]
        L = _lcm_monomial(fi.lm, fj.lm)
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue
        if chain_skip(i, j, L):
            continue
        si, sj = _quotient(L, fi.lm), _quotient(L, fj.lm)
        g = gcd(fi.lc, fj.lc)
        ci, cj = fj.lc // g, fi.lc // g
        s: IntPoly = {}
        for m, v in fi.poly.items():
            s[_shift(m, si)] = ci * v
        for m, v in fj.poly.items():
            mm = _shift(m, sj)
            nv = s.get(mm, 0) - cj * v
            if nv:
                s[mm] = nv
            else:
                s.pop(mm, None)
        if not s:
            continue
        r, _ = _reduce(s, G)
        if r:
            add(r)

    return _reduced_basis(G, nvars)


def _reduced_basis(G: list[_Element], nvars: int) -> GroebnerBasis:
    # minimal basis: drop elements whose leading monomial is divisible by another's
    keep: list[_Element] = []
    for idx, el in enumerate(G):
        dominated = False
        for jdx, other in enumerate(G):
            if jdx == idx or not divides(other.lm, el.lm):
                continue
            if other.lm != el.lm or jdx < idx:
                dominated = True
                break
        if not dominated:
            keep.append(el)
    keep.sort(key=lambda e: degrevlex_key(e.lm))
    # inter-reduce tails
    out: list[_Element] = []
    for idx, el in enumerate(keep):
        others = [e for jdx, e in enumerate(keep) if jdx != idx]
        tail = {m: v for m, v in el.poly.items() if m != el.lm}
        r, s = _reduce(tail, others) if tail else ({}, Fraction(1))
        # el = lc*x^lm + tail  ~  lc*x^lm + r/s
        q = {m: v * s.denominator for m, v in r.items()}
        lead_scaled = el.lc * s.numerator
        q = {m: v for m, v in q.items()}
        q[el.lm] = lead_scaled
        q = _primitive(q)
        out.append(_Element(el.lm, q[el.lm], q))
    polys = []
    for el in out:
        polys.append(RationalPolynomial._raw(nvars, {m: Fraction(v, el.lc) for m, v in el.poly.items()}))
    basis = GroebnerBasis(polys, nvars)
    basis._int = out
    return basis


def normal_form(p: RationalPolynomial, G: GroebnerBasis) -> RationalPolynomial:
    """Fully reduced remainder of ``p`` modulo ``G``."""
    if p.nvars != G.nvars:
        raise ArgumentError(f"variable count mismatch: {p.nvars} vs {G.nvars}")
    if not p.terms:
        return RationalPolynomial(p.nvars)
    den = lcm(*(c.denominator for c in p.terms.values()))
    q = {m: int(c * den) for m, c in p.terms.items()}
    r, s = _reduce(q, G._elements())
    factor = s * den
    return RationalPolynomial._raw(p.nvars, {m: Fraction(v) / factor for m, v in r.items()})


def is_member(p: RationalPolynomial, G: GroebnerBasis) -> bool:
    return not normal_form(p, G).terms


def hilbert_series_quotient(G: GroebnerBasis) -> list[int]:
    """Count standard monomials degree by degree."""
    lms = G.leading_monomials()
    k = G.nvars
    if any(not any(m) for m in lms):
        return []  # unit ideal
    for v in range(k):
        if not any(m[v] and sum(m) == m[v] for m in lms):
            raise ArithmeticError("quotient not finite-dimensional")
    series = []
    d = 0
    while True:
        count = sum(1 for a in monomials_of_degree(k, d)
                    if not any(divides(m, a) for m in lms))
        if count == 0:
            return series
        series.append(count)
        d += 1


# -- the ideals of the curvature-form algebra -----------------------------------

def generator_exponent(j: int, n: int) -> int:
    return j * (n - j) + 1


def build_ideal_generators(k: int, n: int) -> IdealSpec:
    if not 1 <= k:
        raise ArgumentError(f"k must be >= 1, got {k}")
    if k > n:
        raise ArgumentError(f"k={k} exceeds n={n}")
    subsets = [s for j in range(1, k + 1) for s in combinations(range(1, k + 1), j)]
    gens = [RationalPolynomial.linear_sum(s, k) ** generator_exponent(len(s), n) for s in subsets]
    return IdealSpec(k, n, subsets, gens)


@lru_cache(maxsize=64)
def ideal_basis(k: int, n: int) -> GroebnerBasis:
    """Cached reduced Groebner basis of ``I_{k,n}``."""
    return buchberger(build_ideal_generators(k, n).generators)


def membership_via_derivatives(p: RationalPolynomial, k: int, n: int) -> bool:
    """Decide ``p in I_{k,n}`` by descending in ``n``.

    ``p`` lies in ``I_{k,n}`` iff each squarefree mixed partial
    ``D_S p`` (``S`` a subset of ``{1..k}``, empty included) lies in
    ``I_{k,n-1}``.  At ``n = k`` membership is decided by normal form.
    """
    if p.nvars != k:
        raise ArgumentError(f"polynomial has {p.nvars} variables, expected k={k}")
    if k > n:
        raise ArgumentError(f"k={k} exceeds n={n}")
    return _member_desc(p, k, n)


def _member_desc(p: RationalPolynomial, k: int, n: int) -> bool:
    if not p.terms:
        return True
    if n == k:
        return is_member(p, ideal_basis(k, k))
    # degree bound: A_{k,m} vanishes above C(m,2)
    for size in range(k + 1):
        for S in combinations(range(1, k + 1), size):
            q = p.mixed_partial(S)
            if not _member_desc(q, k, n - 1):
                return False
    return True


def elementary_symmetric(j: int, n: int) -> RationalPolynomial:
    terms = {}
    for S in combinations(range(n), j):
        m = [0] * n
        for v in S:
            m[v] = 1
        terms[tuple(m)] = 1
    return RationalPolynomial(n, terms)


def cohomology_poincare(n: int, check: bool = False) -> list[int]:
    """Poincare polynomial of the full flag variety, ``prod_{m<=n} [m]_q``.

    With ``check=True`` the same series is recomputed from a Groebner basis
    of the ideal of elementary symmetric polynomials.
    """
    if n < 1:
        raise ArgumentError(f"n must be >= 1, got {n}")
    series = [1]
    for m in range(1, n + 1):
        nxt = [0] * (len(series) + m - 1)
        for i, c in enumerate(series):
            for t in range(m):
                nxt[i + t] += c
        series = nxt
    if check:
        G = buchberger([elementary_symmetric(j, n) for j in range(1, n + 1)])
        other = hilbert_series_quotient(G)
        if other != series:
            raise ArithmeticError(f"q-factorial {series} != Groebner count {other}")
    return series
