"""Independent oracles used by the tests.

None of these go through the library's fast paths: folding is done one
random fold step at a time, double cosets are enumerated word by word.
"""

from __future__ import annotations

import random

from stallings.graph import Alphabet, LabeledGraph
from stallings.subgroup import Subgroup, conjugate, intersect
from stallings.words import reduce_word


def naive_fold(g: LabeledGraph, rng: random.Random) -> LabeledGraph:
    """Fold by repeatedly picking a random collision and identifying the two edges."""
    verts = set(g.vertices)
    edges = [list(e) for e in g.edges()]
    base = g.basepoint
    while True:
        darts: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for i, (u, v, c) in enumerate(edges):
            darts.setdefault((u, c), []).append((i, v))
            darts.setdefault((v, c ^ 1), []).append((i, u))
        collisions = [k for k, ds in darts.items() if len(ds) > 1]
        if not collisions:
            break
        key = rng.choice(sorted(collisions))
        (i, x), (j, y) = rng.sample(darts[key], 2)
        del edges[j]
        if x != y:
            keep, drop = min(x, y), max(x, y)
            for e in edges:
                if e[0] == drop:
                    e[0] = keep
                if e[1] == drop:
                    e[1] = keep
            verts.discard(drop)
            if base == drop:
                base = keep
    order = sorted(verts)
    new = {v: i for i, v in enumerate(order)}
    return LabeledGraph.from_edges(
        g.alphabet,
        len(order),
        [(new[u], new[v], c) for u, v, c in edges],
        None if base is None else new[base],
    )


def random_connected_graph(rng: random.Random, alphabet: Alphabet, n: int, extra: int) -> LabeledGraph:
    """Random spanning tree plus ``extra`` random edges, random signed labels, basepoint 0."""
    k = alphabet.num_codes
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v, rng.randrange(k)) if rng.random() < 0.5 else (v, u, rng.randrange(k)))
    for _ in range(extra):
        edges.append((rng.randrange(n), rng.randrange(n), rng.randrange(k)))
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v], c) for u, v, c in edges]
    return LabeledGraph.from_edges(alphabet, n, edges, perm[0])


def all_words(num_letters: int, max_length: int):
    """All freely reduced code tuples of length <= max_length, by plain recursion."""
    k = 2 * num_letters
    out = [()]
    frontier = [()]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for c in range(k):
                if w and w[-1] == c ^ 1:
                    continue
                nxt.append(w + (c,))
        out += nxt
        frontier = nxt
    return out


def trace(g: LabeledGraph, start: int, word) -> int | None:
    v = start
    for c in word:
        for code, dart in g.stars[v]:
            if code == c:
                v = g.head(dart)
                break
        else:
            return None
    return v


class DoubleCosetTester:
    """Decides t ∈ H1 s H2 by folding H1's graph, a path labeled s, and H2's graph.

    The reduced labels of paths from H1's basepoint to the image of H2's
    basepoint are exactly H1 s H2.
    """

    def __init__(self, h1: Subgroup, h2: Subgroup, s, rng: random.Random):
        g1, g2 = h1.graph, h2.graph
        n1, s = g1.num_vertices, reduce_word(s)
        # path vertices n1 .. n1+len(s)-1; H2 vertex v sits at n1+len(s)+v, its basepoint at the path end
        path = [g1.basepoint] + [n1 + i for i in range(len(s))]
        off = n1 + len(s)

        def place(v):
            return path[-1] if v == g2.basepoint else off + v

        edges = list(g1.edges())
        edges += [(path[i], path[i + 1], c) for i, c in enumerate(s)]
        edges += [(place(u), place(v), c) for u, v, c in g2.edges()]
        g = LabeledGraph.from_edges(h1.alphabet, off + g2.num_vertices, edges, g1.basepoint)
        self.graph = naive_fold(g, rng)
        self.target = trace(self.graph, self.graph.basepoint, s)
        assert self.target is not None

    def __contains__(self, t) -> bool:
        return trace(self.graph, self.graph.basepoint, reduce_word(t)) == self.target


def brute_double_cosets(h1: Subgroup, h2: Subgroup, max_length: int, seed: int = 0):
    """Sum r̄(H1 ∩ t H2 t^-1) over distinct double cosets met by words t of length <= max_length.

    Returns ``(total, [(t, reduced rank), ...])`` for the nontrivial classes found.
    """
    rng = random.Random(seed)
    classes: list[tuple[tuple, DoubleCosetTester]] = []
    nontrivial = []
    for t in all_words(len(h1.alphabet), max_length):
        if any(t in tester for _, tester in classes):
            continue
        classes.append((t, DoubleCosetTester(h1, h2, t, rng)))
        r = intersect(h1, conjugate(h2, t)).reduced_rank
        if r > 0:
            nontrivial.append((t, r))
    return sum(r for _, r in nontrivial), nontrivial


def closed_reduced_paths(g: LabeledGraph, max_length: int):
    """Dart sequences of every closed non-backtracking walk at the basepoint."""
    out = []
    stack = [(g.basepoint, None, ())]
    while stack:
        v, last, path = stack.pop()
        if path and v == g.basepoint:
            out.append(path)
        if len(path) == max_length:
            continue
        for _, d in g.stars[v]:
            if last is not None and d == g.inv(last):
                continue
            stack.append((g.head(d), d, path + (d,)))
    return out
