"""Squarefree algebra generated by the edge 2-forms gamma_{i,j}.

The 2-forms ``gamma_{i,j}`` (``1 <= i < j <= n``) commute and square to
zero, so products of them are indexed by edge *sets* of the complete graph
``K_n``.  An edge set is stored as a bitmask; bit ``b`` is the position of
the edge in the lexicographic order ``(1,2), (1,3), ..., (1,n), (2,3), ...``.

The curvature form of the i-th tautological line bundle is the i-th row sum
of the skew matrix with ``gamma_{i,j}`` above the diagonal::

    w_i = sum_{j > i} gamma_{i,j} - sum_{j < i} gamma_{j,i}

Example
-------
>>> w1, w2 = curvature_form(1, 3), curvature_form(2, 3)
>>> print(w1 * w2)
-1 * g(1,2) g(1,3)
+1 * g(1,2) g(2,3)
+1 * g(1,3) g(2,3)
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import lcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ArgumentError, ResourceError

#: Default cap on the ambient size (28 edge bits).
MAX_N = 8


def check_ambient(n: int, allow_large: bool = False) -> None:
    if n < 1:
        raise ArgumentError(f"ambient size must be >= 1, got {n}")
    if n > MAX_N and not allow_large:
        raise ResourceError(f"n={n} exceeds the default cap {MAX_N}; pass allow_large=True")


@lru_cache(maxsize=None)
def edges(n: int) -> tuple[tuple[int, int], ...]:
    """All edges of K_n in lexicographic order; position = bit index."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


@lru_cache(maxsize=None)
def _edge_bits(n: int) -> dict[tuple[int, int], int]:
    return {e: b for b, e in enumerate(edges(n))}


def edge_bit(i: int, j: int, n: int) -> int:
    """Bit position of edge (i, j), i < j, in the ambient K_n."""
    try:
        return _edge_bits(n)[(i, j)]
    except KeyError:
        raise ArgumentError(f"({i},{j}) is not an edge of K_{n}") from None


def edge_mask(edge_list: Iterable[tuple[int, int]], n: int) -> int:
    mask = 0
    for i, j in edge_list:
        b = edge_bit(i, j, n)
        if mask >> b & 1:
            raise ArgumentError(f"repeated edge ({i},{j})")
        mask |= 1 << b
    return mask


def mask_edges(mask: int, n: int) -> list[tuple[int, int]]:
    """Decode a bitmask into its list of edges (in bit order)."""
    es = edges(n)
    out = []
    while mask:
        low = mask & -mask
        out.append(es[low.bit_length() - 1])
        mask ^= low
    return out


class GammaPolynomial:
    """Sparse linear combination of squarefree gamma-monomials.

    ``terms`` maps an edge-set bitmask to a nonzero exact coefficient
    (``int`` or ``Fraction``).  Instances are treated as immutable.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, Rational] | None = None):
        self.n = n
        self.terms: dict[int, Rational] = {}
        if terms:
            top = 1 << len(edges(n))
            for mask, c in terms.items():
                if not 0 <= mask < top:
                    raise ArgumentError(f"bitmask {mask:#x} out of range for n={n}")
                if c:
                    self.terms[mask] = _normalize_coeff(c)

    @classmethod
    def _raw(cls, n: int, terms: dict[int, Rational]) -> "GammaPolynomial":
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, n: int) -> "GammaPolynomial":
        return cls._raw(n, {0: 1})

    @classmethod
    def zero(cls, n: int) -> "GammaPolynomial":
        return cls._raw(n, {})

    @classmethod
    def gamma(cls, i: int, j: int, n: int) -> "GammaPolynomial":
        return cls._raw(n, {1 << edge_bit(i, j, n): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[int, Rational]]:
        return iter(sorted(self.terms.items()))

    def degrees(self) -> set[int]:
        """Edge-set cardinalities occurring in the support."""
        return {m.bit_count() for m in self.terms}

    def homogeneous_part(self, d: int) -> "GammaPolynomial":
        return GammaPolynomial._raw(self.n, {m: c for m, c in self.terms.items() if m.bit_count() == d})

    def _check(self, other: "GammaPolynomial") -> None:
        if not isinstance(other, GammaPolynomial):
            raise TypeError(f"expected GammaPolynomial, got {type(other).__name__}")
        if other.n != self.n:
            raise ArgumentError(f"ambient mismatch: n={self.n} vs n={other.n}")

    def __add__(self, other: "GammaPolynomial") -> "GammaPolynomial":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GammaPolynomial._raw(self.n, out)

    def __neg__(self) -> "GammaPolynomial":
        return GammaPolynomial._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "GammaPolynomial") -> "GammaPolynomial":
        return self + (-other)

    def scale(self, c: Rational) -> "GammaPolynomial":
        if not c:
            return GammaPolynomial.zero(self.n)
        return GammaPolynomial._raw(self.n, {m: _normalize_coeff(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "GammaPolynomial":
        if e < 0:
            raise ArgumentError("negative power")
        result = GammaPolynomial.one(self.n)
        for _ in range(e):
            result = multiply(result, self)
            if not result.terms:
                break
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, GammaPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"GammaPolynomial(n={self.n}, terms={dict(sorted(self.terms.items()))!r})"

    def __str__(self) -> str:
        return dump(self) or "0"


def _normalize_coeff(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    if isinstance(c, int):
        return int(c)
    if isinstance(c, Fraction):
        return c
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def multiply(p: GammaPolynomial, q: GammaPolynomial) -> GammaPolynomial:
    """Product in the squarefree algebra; overlapping edge sets vanish."""
    p._check(q)
    out: dict[int, Rational] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            if m1 & m2:
                continue
            m = m1 | m2
            out[m] = out.get(m, 0) + c1 * c2
    return GammaPolynomial._raw(p.n, {m: c for m, c in out.items() if c})


def curvature_form(i: int, n: int, allow_large: bool = False) -> GammaPolynomial:
    """Row sum ``w_i`` of the skew gamma matrix on ``K_n``."""
    if n < 2:
        raise ArgumentError(f"n must be >= 2, got {n}")
    check_ambient(n, allow_large)
    if not 1 <= i <= n:
        raise ArgumentError(f"index {i} out of range 1..{n}")
    return _curvature_form(i, n)


@lru_cache(maxsize=None)
def _curvature_form(i: int, n: int) -> GammaPolynomial:
    terms = {}
    for j in range(1, n + 1):
        if j > i:
            terms[1 << edge_bit(i, j, n)] = 1
        elif j < i:
            terms[1 << edge_bit(j, i, n)] = -1
    return GammaPolynomial._raw(n, terms)


def _check_subset(subset: Sequence[int], n: int) -> None:
    if len(set(subset)) != len(subset):
        raise ArgumentError(f"repeated indices in subset {tuple(subset)}")
    for i in subset:
        if not 1 <= i <= n:
            raise ArgumentError(f"index {i} out of range 1..{n}")


def evaluate_exponent(alpha: Sequence[int], subset: Sequence[int], n: int,
                      allow_large: bool = False) -> GammaPolynomial:
    """Evaluate ``prod_t w_{subset[t]} ** alpha[t]``."""
    if len(alpha) != len(subset):
        raise ArgumentError(f"exponent length {len(alpha)} != subset length {len(subset)}")
    if any(a < 0 for a in alpha):
        raise ArgumentError(f"negative exponent in {tuple(alpha)}")
    check_ambient(n, allow_large)
    _check_subset(subset, n)
    result = GammaPolynomial.one(n)
    if sum(alpha) > len(edges(n)):
        return GammaPolynomial.zero(n)
    for a, i in zip(alpha, subset):
        w = _curvature_form(i, n)
        for _ in range(a):
            result = multiply(result, w)
            if not result.terms:
                return result
    return result


def evaluate_polynomial(p, subset: Sequence[int], n: int,
                        allow_large: bool = False) -> GammaPolynomial:
    """Substitute ``x_t -> w_{subset[t]}`` into a :class:`RationalPolynomial`.

    Rational coefficients are scaled to integers by their common
    denominator, evaluated in integer arithmetic, and divided back.
    """
    if p.nvars > len(subset):
        raise ArgumentError(f"polynomial has {p.nvars} variables but only {len(subset)} forms given")
    check_ambient(n, allow_large)
    _check_subset(subset, n)
    if not p.terms:
        return GammaPolynomial.zero(n)
    denom = lcm(*(Fraction(c).denominator for c in p.terms.values()))
    k = len(subset)
    cache: dict[tuple[int, ...], GammaPolynomial] = {(0,) * k: GammaPolynomial.one(n)}
    forms = [_curvature_form(i, n) for i in subset]

    def image(a: tuple[int, ...]) -> GammaPolynomial:
        hit = cache.get(a)
        if hit is not None:
            return hit
        t = max(s for s in range(k) if a[s])
        prev = a[:t] + (a[t] - 1,) + a[t + 1:]
        val = multiply(image(prev), forms[t])
        cache[a] = val
        return val

    acc: dict[int, int] = {}
    for expo, c in p.terms.items():
        a = tuple(expo) + (0,) * (k - len(expo))
        if sum(a) > len(edges(n)):
            continue
        scaled = int(Fraction(c) * denom)
        for m, v in image(a).terms.items():
            acc[m] = acc.get(m, 0) + scaled * v
    out = {m: _normalize_coeff(Fraction(v, denom)) for m, v in acc.items() if v}
    return GammaPolynomial._raw(n, out)


def apply_transposition(t: int, p: GammaPolynomial) -> GammaPolynomial:
    """Action of the elementary transposition ``tau_t`` (swap t and t+1).

    Vertices t and t+1 are relabelled in every edge and the coefficient is
    negated for each occurrence of the edge (t, t+1).
    """
    n = p.n
    if not 1 <= t <= n - 1:
        raise ArgumentError(f"transposition index {t} out of range 1..{n - 1}")
    perm = _transposition_bits(t, n)
    special = 1 << edge_bit(t, t + 1, n)
    out = {}
    for m, c in p.terms.items():
        image = 0
        rest = m
        while rest:
            low = rest & -rest
            image |= perm[low.bit_length() - 1]
            rest ^= low
        out[image] = -c if m & special else c
    return GammaPolynomial._raw(n, out)


@lru_cache(maxsize=None)
def _transposition_bits(t: int, n: int) -> tuple[int, ...]:
    swap = {t: t + 1, t + 1: t}
    out = []
    for i, j in edges(n):
        a, b = swap.get(i, i), swap.get(j, j)
        out.append(1 << edge_bit(min(a, b), max(a, b), n))
    return tuple(out)


# -- textual dump, shared with the matrix cache ---------------------------

_TERM = re.compile(r"^([+-])(\d+(?:/\d+)?) \*((?: g\(\d+,\d+\))*)$")
_GAMMA = re.compile(r"g\((\d+),(\d+)\)")


def dump(p: GammaPolynomial) -> str:
    """One line per term, ``"+c * g(i,j) g(k,l) ..."``, sorted by bitmask."""
    lines = []
    for m, c in sorted(p.terms.items()):
        sign = "-" if c < 0 else "+"
        gammas = "".join(f" g({i},{j})" for i, j in mask_edges(m, p.n))
        lines.append(f"{sign}{abs(c)} *{gammas}")
    return "\n".join(lines)


def parse_dump(text: str, n: int) -> GammaPolynomial:
    terms: dict[int, Rational] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        match = _TERM.match(line)
        if not match:
            raise ArgumentError(f"cannot parse term line {line!r}")
        sign, coeff, gammas = match.groups()
        c = _normalize_coeff(Fraction(coeff))
        mask = edge_mask([(int(a), int(b)) for a, b in _GAMMA.findall(gammas)], n)
        c = -c if sign == "-" else c
        terms[mask] = terms.get(mask, 0) + c
    return GammaPolynomial(n, terms)
