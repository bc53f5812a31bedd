"""
A pair with r̄(J) r̄(H1 ∩ H2) > r̄(H1) r̄(H2)
============================================

Two subgroups of F(a, b, c, d, e) drawn as graphs of the family
Gamma(k, l, m, n) have reduced ranks 3 and 5, an intersection of reduced
rank 8, and a join of reduced rank 2.  The product inequality would need
2 * 8 <= 3 * 5.
"""

from stallings import core, pullback
from stallings.constructions import theorem_pair, recognize_gamma, verify_theorem, gamma_base
from stallings.inequalities import im_inequality

d1, d2 = theorem_pair()
print(d1)
print(d2)

# The join is the small graph both are drawn on.
rep = im_inequality(d1, d2)
print(rep)

# The cored pullback is a single copy of Gamma(77, 2, 15, 6).
psi = core(pullback(d1, d2))
shape = recognize_gamma(psi)
print(shape, shape.cycle_lengths)

# The full check, with both certificates.
res = verify_theorem()
print("C1", res.c1.verdict, "C2", res.c2.certified)
print("join is the base graph:", res.c2.join_identified, gamma_base())
