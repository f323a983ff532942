# coding: utf-8

# # Curvature forms as squarefree polynomials
#
# The forms w_1..w_n live in a commutative algebra generated by symbols
# g(i,j), one per edge of the complete graph K_n, with g(i,j)^2 = 0.
# Monomials are stored as bitmasks over the edges.

from chernbott.edge_algebra import (GammaPolynomial, apply_transposition,
                                    curvature_form, dump, edges)

n = 4
print("edges of K_4 in bit order:", edges(n))

# Each w_i is a signed sum of the n-1 edges touching vertex i.

for i in range(1, n + 1):
    print(f"w_{i} =", dump(curvature_form(i, n)))

# The rows add up to zero, so any n-1 of the forms already generate everything.

total = GammaPolynomial.zero(n)
for i in range(1, n + 1):
    total = total + curvature_form(i, n)
print("w_1 + ... + w_4 == 0:", total.is_zero())

# Squaring kills repeated edges, which is where the interesting relations come from.

w1 = curvature_form(1, n)
for p in range(1, 5):
    print(f"w_1^{p}: {len((w1 ** p).terms)} terms")

# Swapping two vertex labels permutes the forms.

print("s_1(w_1) == w_2:", apply_transposition(1, w1) == curvature_form(2, n))
