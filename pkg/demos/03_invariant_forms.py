# coding: utf-8

# # Invariant forms and Eulerian digraphs
#
# One-forms a(i,j) and abar(i,j) generate an exterior algebra.  A monomial is
# invariant when its multiweight vanishes.  Reading a(i,j) as the arc i->j and
# abar(i,j) as j->i, that happens exactly when every vertex has indegree equal
# to outdegree.

from chernbott.combinatorics import eulerian_bruteforce
from chernbott.exterior import (ExteriorMonomial, a, abar, eulerian_identity_check,
                                invariant_forms_hilbert, is_eulerian,
                                monomial_to_digraph, multiweight_of)

m = ExteriorMonomial.from_forms([a(1, 2), a(2, 3), abar(1, 3)], 3)
print("monomial", [str(f) for f in m.forms()], "sign", m.sign)
print("multiweight", multiweight_of(m).lam)
arcs = monomial_to_digraph(m)
print("digraph", sorted(arcs), "eulerian:", is_eulerian(arcs, 3))

# Dimensions by degree.  n=4 has 8 invariant forms of degree 3: two orientations
# of each of the four triangles.

for n in range(2, 6):
    s = invariant_forms_hilbert(n)
    print(f"n={n} total={sum(s)}", s)

# Reversing all arcs pairs up the invariant monomials, apart from the ones made
# of whole 2-cycles.

for n in range(1, 6):
    r = eulerian_identity_check(n)
    print(f"n={n}: Z={r.Z} = {r.symmetric_count} + 2*{r.implied_eul}; brute force {eulerian_bruteforce(n)}")
