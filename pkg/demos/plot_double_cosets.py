"""
Double cosets and the generalized inequality
============================================

The nontrivial intersections H1 ∩ s H2 s^-1 over double cosets H1 s H2 are
the components of the cored pullback.  We build the family of pairs with
finite cyclic quotients and compare the double-coset sum against the product
of reduced ranks.
"""

from stallings.constructions import build_example, verify_example
from stallings.inequalities import double_cosets

for k in range(1, 5):
    h0, h1, h2 = build_example(k)
    report = double_cosets(h1, h2)
    print(f"k={k}: r1={h1.reduced_rank} r2={h2.reduced_rank}",
          "components", [c.reduced_rank for c in report.components],
          "sum", report.total)

# The extended join recovers the whole free group, of reduced rank k.
for k in range(1, 5):
    res = verify_example(k, strict=False)
    print(k, res.extended_join_rank, res.failures)
