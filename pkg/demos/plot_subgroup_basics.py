"""
Subgroups of a free group as folded graphs
==========================================

A finitely generated subgroup of F(a, b) is stored as its folded, cored,
rooted graph.  Everything below is a graph operation.
"""

from stallings import Alphabet, from_generators, intersect, join, finite_index, contains
from stallings.io import export_dot, format_subgroup

A = Alphabet("ab")

# Lowercase letters are generators, uppercase letters their inverses.
h1 = from_generators(A, ["aa", "ab", "bA"])
h2 = from_generators(A, ["aaa", "bA", "abAA", "aab"])
print(h1)
print(h2)

# Membership is a walk from the basepoint.
for w in ["ab", "aB", "a", "abab"]:
    print(w, contains(h1, w))

# Both are kernels of maps onto cyclic groups, so both have finite index.
print("index", finite_index(h1), finite_index(h2))

# Intersection is the basepoint component of the pullback; the join folds a wedge.
meet = intersect(h1, h2)
print("meet reduced rank", meet.reduced_rank, "index", finite_index(meet))
print("join", join(h1, h2))

# A free basis read off a spanning tree, and the graph in DOT form.
print(format_subgroup(meet))
print(export_dot(h1))
