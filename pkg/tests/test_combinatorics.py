from math import comb, factorial

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from chernbott.combinatorics import (cayley, eulerian_bruteforce, finite_differences,
                                     forest_count, forest_count_bruteforce,
                                     verify_conjecture_polynomial,
                                     verify_conjecture_total)
from chernbott.errors import ArgumentError, ResourceError
from chernbott.exterior import eulerian_identity_check


def spanning_trees(m):
    # Kirchhoff: any cofactor of the Laplacian of K_m
    if m == 1:
        return 1
    L = sp.Matrix(m, m, lambda i, j: m - 1 if i == j else -1)
    return int(L[1:, 1:].det())


@pytest.mark.parametrize("m", range(1, 8))
def test_cayley_against_matrix_tree(m):
    assert cayley(m) == spanning_trees(m)


def test_forest_values():
    assert [forest_count(n) for n in range(8)] == [1, 1, 2, 7, 38, 291, 2932, 36961]


@pytest.mark.parametrize("n", range(0, 7))
def test_recurrence_vs_bruteforce(n):
    assert forest_count(n) == forest_count_bruteforce(n)


@given(st.integers(1, 40))
def test_forest_strictly_increasing(n):
    assert forest_count(n + 1) > forest_count(n)


def test_forest_bounds_by_edges():
    # every forest is an edge subset, and every tree on n vertices is a forest
    for n in range(1, 9):
        assert cayley(n) <= forest_count(n) <= 2 ** comb(n, 2)


def test_bruteforce_caps():
    with pytest.raises(ResourceError):
        forest_count_bruteforce(7)
    with pytest.raises(ResourceError):
        eulerian_bruteforce(6)
    with pytest.raises(ArgumentError):
        forest_count(-1)
    with pytest.raises(ArgumentError):
        eulerian_bruteforce(0)


def test_eulerian_small():
    assert [eulerian_bruteforce(n) for n in range(1, 6)] == [1, 2, 10, 152, 7736]


@pytest.mark.parametrize("n", range(1, 6))
def test_eulerian_equals_zero_weight_count(n):
    assert eulerian_bruteforce(n) == eulerian_identity_check(n).Z


def test_finite_differences():
    table = finite_differences([2, 7, 14, 23])
    assert table[1] == [5, 7, 9] and table[2] == [2, 2] and table[3] == [0]
    assert finite_differences([5]) == [[5]]


@given(st.integers(1, 4), st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_kth_difference_of_monic_polynomial(k, coeffs):
    vals = [n ** k + sum(c * n ** i for i, c in enumerate(coeffs[:k])) for n in range(10)]
    assert set(finite_differences(vals)[k]) == {factorial(k)}


def test_conjecture_total_desk():
    rep = verify_conjecture_total(5)
    assert rep.passed
    assert [r.total_dim for r in rep.totals] == [2, 7, 38, 291]


def test_conjecture_total_detects_mismatch():
    rep = verify_conjecture_total(3, series_fn=lambda k, n: [1] * n)
    assert not rep.passed and [r.match for r in rep.totals] == [True, False]


def test_conjecture_polynomial_k1_k2():
    rep = verify_conjecture_polynomial(1, range(1, 6))
    assert rep.passed and rep.polynomial[0].dims == [1, 2, 3, 4, 5]
    rep = verify_conjecture_polynomial(2, range(2, 6))
    rec = rep.polynomial[0]
    assert rep.passed and rec.dims == [2, 7, 14, 23]
    assert rec.dims == [n * n - 2 for n in range(2, 6)]


def test_conjecture_argument_errors():
    with pytest.raises(ArgumentError):
        verify_conjecture_polynomial(2, [2, 3, 4])
    with pytest.raises(ArgumentError):
        verify_conjecture_polynomial(2, [2, 4, 5, 6])
    with pytest.raises(ArgumentError):
        verify_conjecture_polynomial(3, [2, 3, 4, 5, 6])
    with pytest.raises(ResourceError):
        verify_conjecture_total(7)
    with pytest.raises(ArgumentError):
        verify_conjecture_total(3, n_min=4)
