"""
Searching for pairs with r̄(H1 ∩ H2) = r̄(H1) r̄(H2)
=================================================

Random pairs from the seeded model are checked for the equality; each hit
is logged with the reduced rank of its join.  A join of reduced rank above 1
would be flagged loudly.
"""

from collections import Counter

from stallings.problem import findings_log, problem_search

found = problem_search(seed=42, trials=1000)
print(Counter(f.ranks for f in found).most_common(10))
print("negative candidates:", [f for f in found if f.negative])

# The log is identical however the trials are sharded.
print(findings_log(found, 42, 1000)[:400])
