import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from chernbott.edge_algebra import (GammaPolynomial, apply_transposition,
                                    curvature_form, dump, edge_bit, edges,
                                    evaluate_exponent, evaluate_polynomial,
                                    mask_edges, multiply, parse_dump)
from chernbott.errors import ArgumentError, ResourceError
from chernbott.polynomial import RationalPolynomial, parse

from conftest import SEED


def g(i, j, n=3):
    return GammaPolynomial.gamma(i, j, n)


# -- independent oracle: commuting symbols with squares killed by hand --------

def to_sympy(p: GammaPolynomial):
    syms = {e: sp.Symbol(f"g{e[0]}{e[1]}") for e in edges(p.n)}
    return sum((c * sp.Mul(*[syms[e] for e in mask_edges(m, p.n)]) for m, c in p.terms.items()),
               sp.Integer(0)), syms


def squarefree_expand(expr, syms):
    poly = sp.Poly(sp.expand(expr), *syms.values())
    out = {}
    keys = list(syms)
    for monom, c in poly.terms():
        if any(e > 1 for e in monom):
            continue
        mask = sum(1 << edge_bit(*keys[t], n=max(max(k) for k in keys)) for t, e in enumerate(monom) if e)
        out[mask] = int(c)
    return out


def oracle_product(p, q):
    ep, syms = to_sympy(p)
    eq, _ = to_sympy(q)
    return GammaPolynomial(p.n, squarefree_expand(ep * eq, syms))


def random_gamma_poly(rng, n, nterms=4, max_deg=3):
    es = len(edges(n))
    terms = {}
    for _ in range(nterms):
        d = rng.randint(0, max_deg)
        mask = sum(1 << b for b in rng.sample(range(es), d))
        terms[mask] = rng.randint(-3, 3)
    return GammaPolynomial(n, terms)


# -- curvature forms ------------------------------------------------------

def test_curvature_rows_of_skew_matrix():
    assert curvature_form(1, 3) == g(1, 2) + g(1, 3)
    assert curvature_form(2, 3) == -g(1, 2) + g(2, 3)
    assert curvature_form(3, 3) == -g(1, 3) - g(2, 3)


@pytest.mark.parametrize("n", range(2, 8))
def test_curvature_forms_sum_to_zero(n):
    total = GammaPolynomial.zero(n)
    for i in range(1, n + 1):
        w = curvature_form(i, n)
        assert len(w) == n - 1
        assert set(w.terms.values()) <= {1, -1}
        total = total + w
    assert total.is_zero()


@pytest.mark.parametrize("i,n", [(0, 3), (4, 3), (1, 1)])
def test_curvature_form_range(i, n):
    with pytest.raises(ArgumentError):
        curvature_form(i, n)


def test_ambient_cap():
    with pytest.raises(ResourceError):
        curvature_form(1, 9)
    assert len(curvature_form(1, 9, allow_large=True)) == 8


# -- multiplication -------------------------------------------------------

def test_multiply_examples():
    w1 = g(1, 2) + g(1, 3)
    assert w1 * w1 == GammaPolynomial(3, {0b011: 2})
    assert (g(1, 2) * g(1, 2)).is_zero()
    prod = w1 * (-g(1, 2) + g(2, 3))
    assert prod == g(1, 2) * g(2, 3) - g(1, 2) * g(1, 3) + g(1, 3) * g(2, 3)


def test_multiply_matches_symbolic_oracle():
    rng = random.Random(SEED)
    for n in (3, 4):
        for _ in range(25):
            p, q = random_gamma_poly(rng, n), random_gamma_poly(rng, n)
            assert multiply(p, q) == oracle_product(p, q)


def test_ambient_mismatch():
    with pytest.raises(ArgumentError):
        multiply(g(1, 2, 3), g(1, 2, 4))


gamma_polys = st.builds(
    lambda seed: random_gamma_poly(random.Random(seed), 4, nterms=5),
    st.integers(0, 10**6))


@given(gamma_polys, gamma_polys, gamma_polys)
def test_commutative_associative(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


# -- evaluation -------------------------------------------------------------

def test_evaluate_exponent_examples():
    assert evaluate_exponent((3,), (1,), 3).is_zero()
    assert evaluate_exponent((2, 1), (1, 2), 3) == GammaPolynomial(3, {0b111: 2})
    assert evaluate_exponent((1, 1, 1), (1, 2, 3), 3).is_zero()
    assert evaluate_exponent((0, 0), (1, 2), 3) == GammaPolynomial.one(3)


def test_evaluate_exponent_oracle_and_homogeneity():
    rng = random.Random(SEED)
    for n in (3, 4, 5):
        for _ in range(10):
            k = rng.randint(1, n)
            subset = rng.sample(range(1, n + 1), k)
            alpha = tuple(rng.randint(0, 2) for _ in range(k))
            val = evaluate_exponent(alpha, subset, n)
            assert val.degrees() <= {sum(alpha)}
            expr = sp.Integer(1)
            syms = None
            for a, i in zip(alpha, subset):
                e, syms = to_sympy(curvature_form(i, n))
                expr *= e ** a
            _, syms = to_sympy(curvature_form(1, n))
            assert val == GammaPolynomial(n, squarefree_expand(expr, syms))


def test_evaluate_exponent_rejects_repeats():
    with pytest.raises(ArgumentError):
        evaluate_exponent((1, 1), (2, 2), 3)


def test_evaluate_polynomial_examples():
    assert evaluate_polynomial(parse("x1 + x2 + x3", 3), (1, 2, 3), 3).is_zero()
    assert evaluate_polynomial(parse("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3", 2), (1, 2), 3).is_zero()
    one = evaluate_polynomial(RationalPolynomial.constant(1, 2), (1, 2), 3)
    assert one == GammaPolynomial.one(3)


def test_evaluate_polynomial_rational_coefficients():
    p = parse("1/2*x1^2 + 2/3*x2", 2)
    val = evaluate_polynomial(p, (1, 2), 3)
    expected = evaluate_exponent((2, 0), (1, 2), 3).scale(Fraction(1, 2)) \
        + evaluate_exponent((0, 1), (1, 2), 3).scale(Fraction(2, 3))
    assert val == expected
    assert val.terms[0b011] == 1  # (1/2) * 2


@pytest.mark.parametrize("n", range(2, 7))
def test_ideal_generators_vanish(n):
    for j in range(1, n + 1):
        for S in combinations(range(1, n + 1), j):
            p = RationalPolynomial.linear_sum(range(1, j + 1), j) ** (j * (n - j) + 1)
            assert evaluate_polynomial(p, S, n).is_zero(), S


# -- symmetric group action ----------------------------------------------------

def test_transposition_maps_w1_to_w2():
    assert apply_transposition(1, curvature_form(1, 3)) == curvature_form(2, 3)


@pytest.mark.parametrize("n", range(2, 7))
def test_transpositions_permute_forms(n):
    for t in range(1, n):
        for i in range(1, n + 1):
            target = t + 1 if i == t else t if i == t + 1 else i
            assert apply_transposition(t, curvature_form(i, n)) == curvature_form(target, n)


@given(gamma_polys, gamma_polys)
def test_transposition_is_involutive_automorphism(p, q):
    for t in range(1, 4):
        assert apply_transposition(t, apply_transposition(t, p)) == p
        assert apply_transposition(t, p * q) == apply_transposition(t, p) * apply_transposition(t, q)


@given(gamma_polys)
def test_braid_relations(p):
    n = p.n
    for t in range(1, n - 1):
        a = apply_transposition(t, apply_transposition(t + 1, apply_transposition(t, p)))
        b = apply_transposition(t + 1, apply_transposition(t, apply_transposition(t + 1, p)))
        assert a == b
    # distant transpositions commute
    assert apply_transposition(1, apply_transposition(3, p)) == apply_transposition(3, apply_transposition(1, p))


def test_braid_on_w1():
    w = curvature_form(1, 3)
    t = apply_transposition
    assert t(1, t(2, t(1, w))) == t(2, t(1, t(2, w)))


def test_transposition_range():
    with pytest.raises(ArgumentError):
        apply_transposition(3, curvature_form(1, 3))


# -- text dump ---------------------------------------------------------------

def test_dump_roundtrip():
    p = curvature_form(1, 4) * curvature_form(2, 4) - GammaPolynomial.one(4).scale(Fraction(3, 2))
    text = dump(p)
    assert text.splitlines()[0] == "-3/2 *"
    assert parse_dump(text, 4) == p


def test_dump_format():
    p = curvature_form(1, 3) ** 2
    assert dump(p) == "+2 * g(1,2) g(1,3)"
