# coding: utf-8

# # Two ways to get a Hilbert series
#
# Rank method: for each degree d build the matrix whose rows are the images of
# the degree-d monomials in the forms, and take its rank.  Groebner method:
# compute a basis of the vanishing ideal and count standard monomials.

import time

import numpy as np

from chernbott.groebner import build_ideal_generators, hilbert_series_quotient, ideal_basis
from chernbott.linalg import build_matrix, hilbert_series_rank

k, n = 3, 4
M = build_matrix(k, n, 2)
print("degree-2 evaluation matrix, shape", M.shape)
print(np.array(M.to_dense()))

# Ranks degree by degree.

t = time.perf_counter()
info = hilbert_series_rank(k, n, details=True)
print("rank series   ", info.series, f"({time.perf_counter() - t:.2f}s, primes {info.primes})")

# The ideal side starts from one power of a linear form per subset of variables.

for g in build_ideal_generators(k, n).generators[:4]:
    print("  generator:", g)

t = time.perf_counter()
G = ideal_basis(k, n)
print("groebner series", hilbert_series_quotient(G), f"({time.perf_counter() - t:.2f}s, {len(G)} basis elements)")

# A table for every k <= n <= 5.

for n in range(1, 6):
    row = [sum(hilbert_series_rank(k, n)) for k in range(1, n + 1)]
    print(f"n={n}: total dims", row)
