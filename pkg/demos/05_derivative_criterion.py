# coding: utf-8

# # Membership three ways
#
# A polynomial lies in the vanishing ideal when (a) it evaluates to zero on the
# forms, (b) its normal form against a Groebner basis is zero, (c) all its
# mixed partials land in the ideal one size down, recursively.

import random

from chernbott.groebner import ideal_basis, normal_form
from chernbott.polynomial import parse
from chernbott.presentations import random_member, random_non_member, triple_oracle

for text in ["x2*(x1 + x2)^3", "x1^2", "x1^3"]:
    # the parser does not expand products of sums, so build them by hand
    p = parse("x2", 2) * parse("x1 + x2", 2) ** 3 if "(" in text else parse(text, 2)
    print(f"{text:16s} in I_(2,3)?", triple_oracle(p, 2, 3))

g = parse("x1 + x2", 2) ** 5
G23 = ideal_basis(2, 3)
for S in [(), (1,), (2,), (1, 2)]:
    print("partial", S, "of (x1+x2)^5 reduces to", normal_form(g.mixed_partial(S), G23))

rng = random.Random(0)
for _ in range(3):
    p = random_member(3, 4, rng)
    q = random_non_member(3, 4, rng)
    print(len(p.terms), "term member:", triple_oracle(p, 3, 4), "|", len(q.terms), "term non-member:", triple_oracle(q, 3, 4))
