"""Sparse multivariate polynomials over the rationals.

Monomials are exponent tuples of fixed length ``nvars``.  The term order
throughout is degrevlex with ``x1 > x2 > ... > xk``.

The ASCII grammar used by :func:`parse` and ``str()`` is a sum of terms
``c*x1^a1*x2^a2`` joined by ``+``/``-``::

    >>> p = parse("x1^2 - 3/2*x1*x2 + 1", 2)
    >>> str(p)
    'x1^2 - 3/2*x1*x2 + 1'
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping

from .errors import ArgumentError

Monomial = tuple[int, ...]


def degrevlex_key(m: Monomial) -> tuple:
    """Sort key: larger key = larger monomial in degrevlex."""
    return (sum(m), tuple(-a for a in reversed(m)))


def monomials_of_degree(k: int, d: int) -> list[Monomial]:
    """Exponent vectors of total degree ``d`` in ``k`` variables, lex-descending."""
    if k == 0:
        return [()] if d == 0 else []
    out = []
    for combo in combinations_with_replacement(range(k), d):
        a = [0] * k
        for v in combo:
            a[v] += 1
        out.append(tuple(a))
    out.sort(reverse=True)
    assert len(out) == comb(k - 1 + d, d)
    return out


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class RationalPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        if nvars < 0:
            raise ArgumentError("negative variable count")
        self.nvars = nvars
        self.terms: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != nvars or any(e < 0 for e in m):
                raise ArgumentError(f"bad exponent vector {m} for {nvars} variables")
            c = Fraction(c)
            if c:
                self.terms[m] = self.terms.get(m, 0) + c
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "RationalPolynomial":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, c, nvars: int) -> "RationalPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "RationalPolynomial":
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ArgumentError(f"variable x{i} out of range for {nvars} variables")
        m = [0] * nvars
        m[i - 1] = 1
        return cls._raw(nvars, {tuple(m): Fraction(1)})

    @classmethod
    def linear_sum(cls, indices: Iterable[int], nvars: int) -> "RationalPolynomial":
        p = cls(nvars)
        for i in indices:
            p = p + cls.variable(i, nvars)
        return p

    # -- inspection ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ArgumentError("zero polynomial has no leading monomial")
        return max(self.terms, key=degrevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def monic(self) -> "RationalPolynomial":
        lc = self.leading_coefficient()
        return RationalPolynomial._raw(self.nvars, {m: c / lc for m, c in self.terms.items()})

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            if other.nvars != self.nvars:
                raise ArgumentError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return RationalPolynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return RationalPolynomial._raw(self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ArgumentError("negative power")
        result = RationalPolynomial.constant(1, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_term(self, m: Monomial, c) -> "RationalPolynomial":
        c = Fraction(c)
        if not c:
            return RationalPolynomial(self.nvars)
        return RationalPolynomial._raw(
            self.nvars, {tuple(a + b for a, b in zip(k, m)): v * c for k, v in self.terms.items()})

    def derivative(self, i: int) -> "RationalPolynomial":
        """Partial derivative with respect to ``x_i`` (1-based)."""
        if not 1 <= i <= self.nvars:
            raise ArgumentError(f"variable x{i} out of range")
        t = i - 1
        out = {}
        for m, c in self.terms.items():
            if m[t]:
                out[m[:t] + (m[t] - 1,) + m[t + 1:]] = c * m[t]
        return RationalPolynomial._raw(self.nvars, out)

    def mixed_partial(self, indices: Iterable[int]) -> "RationalPolynomial":
        p = self
        for i in indices:
            p = p.derivative(i)
            if not p.terms:
                break
        return p

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial.constant(other, self.nvars)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"RationalPolynomial({self.nvars}, {str(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(p: RationalPolynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for idx, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        factors = [f"x{v + 1}" if e == 1 else f"x{v + 1}^{e}" for v, e in enumerate(m) if e]
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(a)] + factors)
        if idx == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TOKEN = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse(text: str, nvars: int) -> RationalPolynomial:
    """Parse the ASCII grammar ``c*x1^a1*x2^a2 +/- ...``.

    Unicode minus signs are accepted.  Coefficients may be integers or
    fractions ``p/q``.
    """
    s = text.replace("−", "-").replace(" ", "")
    if not s:
        raise ArgumentError("empty polynomial text")
    terms: dict[Monomial, Fraction] = {}
    pos = 0
    while pos < len(s):
        match = _TOKEN.match(s, pos)
        if not match or match.end() == pos:
            raise ArgumentError(f"cannot parse polynomial {text!r}")
        sign, body = match.groups()
        if sign is None and pos > 0:
            raise ArgumentError(f"missing operator in {text!r}")
        pos = match.end()
        coeff = Fraction(-1 if sign == "-" else 1)
        expo = [0] * nvars
        for factor in body.split("*"):
            fm = _FACTOR.match(factor)
            if fm:
                v = int(fm.group(1))
                if not 1 <= v <= nvars:
                    raise ArgumentError(f"variable x{v} out of range for {nvars} variables")
                expo[v - 1] += int(fm.group(2) or 1)
            else:
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError):
                    raise ArgumentError(f"bad factor {factor!r} in {text!r}") from None
        m = tuple(expo)
        terms[m] = terms.get(m, 0) + coeff
    return RationalPolynomial(nvars, terms)
