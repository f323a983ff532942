# coding: utf-8

# # Total dimension versus labeled forests

from chernbott.combinatorics import (finite_differences, forest_count,
                                     forest_count_bruteforce,
                                     verify_conjecture_polynomial,
                                     verify_conjecture_total)

print("forests:", [forest_count(n) for n in range(1, 9)])
print("brute  :", [forest_count_bruteforce(n) for n in range(1, 7)])

rep = verify_conjecture_total(5)
for r in rep.totals:
    print(f"n={r.n}: dim={r.total_dim} forests={r.forest_count} {'ok' if r.match else 'MISMATCH'}")

# For fixed k the total dimension of A_{k,n} should grow like a monic polynomial
# of degree k in n, so the k-th differences are constant k!.  k=3 would need
# n up to 7 to see two third differences, which is beyond a quick demo.

for k, ns in [(1, range(1, 6)), (2, range(2, 6))]:
    rec = verify_conjecture_polynomial(k, ns).polynomial[0]
    print(f"k={k} dims={rec.dims} difference table:")
    for row in finite_differences(rec.dims)[: k + 1]:
        print("   ", row)
