"""Walk through two small equivalence questions.

First a binary length-14 pair that an affine map z -> 5z relates, then a
ternary length-8 pair whose codes are monomially equivalent even though no
affine map on the cosets connects them.
"""
from cyclequiv import (affine_equivalent, brute_force_equivalent, coset_table, coset_to_poly,
                       parse_multiset, verdict)
from cyclequiv.equivalence import code_matrix

T = coset_table(2, 14)
print(f"GF(2), n=14: n_q={T.n_q}, multiplicity cap={T.max_multiplicity}")
print("cosets:", T.cosets)
a = parse_multiset("{1,2,4}^2", T)
b = parse_multiset("{3,5,6}^2", T)
print(f"  {a}  ->  {coset_to_poly(a).pretty()}")
print(f"  {b}  ->  {coset_to_poly(b).pretty()}")
w = affine_equivalent(a, b)
print("  witness:", w, "| check:", w.maps(a, b))

T3 = coset_table(3, 8)
c = parse_multiset("{0,1,3,4}", T3)
d = parse_multiset("{1,2,3,6}", T3)
print("\nGF(3), n=8:", c, "vs", d)
v = verdict(c, d)
print(f"  affine verdict: {v.status.value} ({v.reason})")
print("  monomial search over all permutations and scalings:",
      brute_force_equivalent(code_matrix(c), code_matrix(d)))
