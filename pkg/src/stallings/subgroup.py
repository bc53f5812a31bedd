"""Finitely generated subgroups of free groups as rooted Stallings graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import graph as _graph
from .graph import (
    Alphabet,
    GraphError,
    LabeledGraph,
    canonical_form,
    component_ids,
    core,
    euler_characteristic,
    fold,
    induced_subgraph,
    is_connected,
    is_folded,
    wedge,
)
from .words import Word, inverse, multiply, parse_word, random_word, reduce_word

DEFAULT_ELEMENT_BUDGET = 10**6


class AlphabetMismatch(GraphError):
    pass


class QuotientTooLarge(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of F(alphabet), held as its folded, cored, rooted graph.

    Equality and hashing go through the rooted canonical form, so two
    ``Subgroup`` objects compare equal exactly when they are the same subgroup.
    """

    graph: LabeledGraph

    def __post_init__(self):
        g = self.graph
        if g.basepoint is None:
            raise GraphError("a subgroup graph needs a basepoint")
        if _graph.VALIDATE:
            if not is_folded(g):
                raise GraphError("subgroup graph is not folded")
            if not is_connected(g):
                raise GraphError("subgroup graph is not connected")
            for v in g.vertices:
                if v != g.basepoint and g.degree(v) < 2:
                    raise GraphError(f"subgroup graph is not cored at vertex {v}")

    @classmethod
    def from_graph(cls, g: LabeledGraph) -> "Subgroup":
        """pi_1 of an arbitrary rooted labeled graph: fold, keep the base component, core."""
        if g.basepoint is None:
            raise GraphError("graph needs a basepoint")
        g = fold(g)
        comp = component_ids(g)
        g = induced_subgraph(g, [v for v in g.vertices if comp[v] == comp[g.basepoint]])
        return cls(core(g))

    @property
    def alphabet(self) -> Alphabet:
        return self.graph.alphabet

    @property
    def rank(self) -> int:
        return 1 - euler_characteristic(self.graph)

    @property
    def reduced_rank(self) -> int:
        return max(-euler_characteristic(self.graph), 0)

    @cached_property
    def canonical(self) -> tuple:
        return canonical_form(self.graph, rooted=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __contains__(self, word) -> bool:
        return contains(self, word)

    def is_trivial(self) -> bool:
        return self.graph.num_edges == 0

    def tree_paths(self) -> list[Word]:
        """Label of the breadth-first tree path from the basepoint to each vertex."""
        return _tree_paths(self.graph)

    def generators(self) -> list[Word]:
        """A free basis read off a breadth-first spanning tree."""
        g = self.graph
        paths, parent = _bfs_tree(g)
        tree = {d >> 1 for d in parent if d is not None}
        return [
            multiply(paths[u], (c,), inverse(paths[v]))
            for i, (u, v, c) in enumerate(g.edges())
            if i not in tree
        ]

    def __repr__(self) -> str:
        return (
            f"Subgroup(rank={self.rank}, |V|={self.graph.num_vertices}, "
            f"alphabet={''.join(self.alphabet.letters)!r})"
        )


def _bfs_tree(g: LabeledGraph) -> tuple[list[Word | None], list[int | None]]:
    paths: list[Word | None] = [None] * g.num_vertices
    parent: list[int | None] = [None] * g.num_vertices
    paths[g.basepoint] = ()
    queue = deque([g.basepoint])
    while queue:
        u = queue.popleft()
        for c, d in g.stars[u]:
            w = g.head(d)
            if paths[w] is None:
                paths[w] = paths[u] + (c,)
                parent[w] = d
                queue.append(w)
    return paths, parent


def _tree_paths(g: LabeledGraph) -> list[Word]:
    return _bfs_tree(g)[0]


def _as_word(alphabet: Alphabet, w) -> Word:
    return parse_word(alphabet, w) if isinstance(w, str) else reduce_word(w)


def trivial_subgroup(alphabet: Alphabet) -> Subgroup:
    return Subgroup(LabeledGraph.from_edges(alphabet, 1, [], 0))


def free_group(alphabet: Alphabet) -> Subgroup:
    """The whole of F(alphabet): a rose with one loop per letter."""
    edges = [(0, 0, 2 * i) for i in range(len(alphabet))]
    return Subgroup(LabeledGraph.from_edges(alphabet, 1, edges, 0))


def from_generators(alphabet: Alphabet, gens: Iterable[Word | str]) -> Subgroup:
    """<gens>: wedge of loops at a basepoint, folded and cored.

    Generators may be code tuples or word strings (``"daD"``).
    """
    edges: list[tuple[int, int, int]] = []
    n = 1
    for w in gens:
        w = _as_word(alphabet, w)
        if not w:
            continue
        prev = 0
        for i, c in enumerate(w):
            if i == len(w) - 1:
                nxt = 0
            else:
                nxt = n
                n += 1
            edges.append((prev, nxt, c))
            prev = nxt
    g = LabeledGraph.from_edges(alphabet, n, edges, 0)
    return Subgroup(core(fold(g)))


def contains(h: Subgroup, w: Word | str) -> bool:
    """Trace ``w`` from the basepoint; member iff the trace closes up."""
    w = _as_word(h.alphabet, w)
    succ = h.graph.successors
    v = h.graph.basepoint
    for c in w:
        v = succ[v].get(c)
        if v is None:
            return False
    return v == h.graph.basepoint


def contains_many(h: Subgroup, words: np.ndarray) -> np.ndarray:
    """Vectorised :func:`contains` over a padded array from ``all_reduced_words``.

    Padding cells must hold ``h.alphabet.num_codes``.
    """
    table = h.graph.transition_table()
    state = np.full(len(words), h.graph.basepoint, dtype=np.int64)
    for col in range(words.shape[1]):
        state = table[state, words[:, col]]
    return state == h.graph.basepoint


def _check_alphabets(*hs) -> Alphabet:
    alphabet = hs[0].alphabet
    for h in hs[1:]:
        if h.alphabet != alphabet:
            raise AlphabetMismatch(f"{alphabet!r} vs {h.alphabet!r}")
    return alphabet


def _graph_of(h) -> LabeledGraph:
    return h.graph if isinstance(h, Subgroup) else h


def pullback(h1: Subgroup | LabeledGraph, h2: Subgroup | LabeledGraph) -> LabeledGraph:
    """Fiber product over the rose: vertex ``(u, v)`` has index ``u * |V2| + v``.

    Vertex names are the pairs ``(u, v)``.  Not cored; usually disconnected.
    """
    g1, g2 = _graph_of(h1), _graph_of(h2)
    alphabet = _check_alphabets(g1, g2)
    n2 = g2.num_vertices
    by_label: dict[int, list[tuple[int, int]]] = {}
    for u, v, c in g2.edges():
        by_label.setdefault(c, []).append((u, v))
    edges = []
    for u1, v1, c in g1.edges():
        for u2, v2 in by_label.get(c, ()):
            edges.append((u1 * n2 + u2, v1 * n2 + v2, c))
    base = None
    if g1.basepoint is not None and g2.basepoint is not None:
        base = g1.basepoint * n2 + g2.basepoint
    names = [(u, v) for u in g1.vertices for v in g2.vertices]
    return LabeledGraph.from_edges(alphabet, g1.num_vertices * n2, edges, base, names)


def intersect(h1: Subgroup, h2: Subgroup) -> Subgroup:
    """H1 ∩ H2: the basepoint component of the pullback, cored at the basepoint."""
    p = pullback(h1, h2)
    comp = component_ids(p)
    mine = comp[p.basepoint]
    p = induced_subgraph(p, [v for v in p.vertices if comp[v] == mine])
    return Subgroup(core(p))


def join(*hs: Subgroup) -> Subgroup:
    """<H1, H2, ...>: wedge at the basepoints, fold, core."""
    if not hs:
        raise ValueError("join needs at least one subgroup")
    _check_alphabets(*hs)
    return Subgroup(core(fold(wedge([h.graph for h in hs]))))


def conjugate(h: Subgroup, s: Word | str) -> Subgroup:
    """s H s^-1: hang a path labeled ``s`` from a new basepoint to the old one."""
    s = _as_word(h.alphabet, s)
    if not s:
        return h
    g = h.graph
    n = g.num_vertices
    # new vertices n .. n+len(s)-1; vertex n is the new basepoint
    path = [n + i for i in range(len(s))] + [g.basepoint]
    edges = list(g.edges()) + [(path[i], path[i + 1], c) for i, c in enumerate(s)]
    grown = LabeledGraph.from_edges(h.alphabet, n + len(s), edges, n)
    return Subgroup(core(fold(grown)))


def finite_index(h: Subgroup) -> int | None:
    """Index in F(alphabet) if the graph covers the rose, otherwise None (infinite)."""
    k = h.alphabet.num_codes
    if all(len(star) == k for star in h.graph.stars):
        return h.graph.num_vertices
    return None


def relative_index(h: Subgroup, j: Subgroup) -> int | None:
    """[J : H] for H <= J, or None when the index is infinite.

    Both are first conjugated so that J's graph loses its hanging stem; then
    H has finite index exactly when its graph covers J's.
    """
    _check_alphabets(h, j)
    if j.is_trivial():
        if not h.is_trivial():
            raise ValueError("h is not a subgroup of j")
        return 1
    paths = j.tree_paths()
    cyclic = _graph.core_vertices(j.graph, None)
    stem = min((paths[v] for v in cyclic), key=lambda w: (len(w), w))
    h = conjugate(h, inverse(stem))
    j = conjugate(j, inverse(stem))
    gh, gj = h.graph, j.graph
    sh, sj = gh.successors, gj.successors
    image = {gh.basepoint: gj.basepoint}
    queue = deque([gh.basepoint])
    covering = True
    while queue:
        u = queue.popleft()
        v = image[u]
        if len(sh[u]) != len(sj[v]):
            covering = False
        for c, t in sh[u].items():
            if c not in sj[v]:
                raise ValueError("h is not a subgroup of j")
            if t not in image:
                image[t] = sj[v][c]
                queue.append(t)
            elif image[t] != sj[v][c]:
                raise ValueError("h is not a subgroup of j")
    if not covering:
        return None
    return gh.num_vertices // gj.num_vertices


def _compose(g: tuple[int, ...], x: tuple[int, ...]) -> tuple[int, ...]:
    # apply g, then x
    return tuple(x[i] for i in g)


def kernel_of_finite_quotient(
    alphabet: Alphabet,
    images: Mapping[str, Sequence[int]],
    budget: int = DEFAULT_ELEMENT_BUDGET,
) -> Subgroup:
    """Kernel of F(alphabet) -> <images> as the Cayley graph of the image group.

    Every letter needs an image; all images are permutations of one set
    ``{0, ..., N-1}``.  Raises :class:`QuotientTooLarge` past ``budget`` elements.
    """
    missing = [x for x in alphabet if x not in images]
    if missing:
        raise ValueError(f"no image for letters {missing}")
    perms = [tuple(images[x]) for x in alphabet]
    degrees = {len(p) for p in perms}
    if len(degrees) > 1:
        raise ValueError("images act on sets of different sizes")
    for p in perms:
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {p}")
    size = degrees.pop() if degrees else 1
    identity = tuple(range(size))
    index = {identity: 0}
    elements = [identity]
    edges = []
    i = 0
    while i < len(elements):
        g = elements[i]
        for code, x in enumerate(perms):
            gx = _compose(g, x)
            j = index.get(gx)
            if j is None:
                if len(elements) >= budget:
                    raise QuotientTooLarge(f"group closure exceeds {budget} elements")
                j = index[gx] = len(elements)
                elements.append(gx)
            edges.append((i, j, 2 * code))
        i += 1
    return Subgroup(LabeledGraph.from_edges(alphabet, len(elements), edges, 0))


def cyclic_images(p: int, letters: Iterable[str]) -> dict[str, tuple[int, ...]]:
    """Every letter maps to the standard p-cycle, i.e. F -> Z/p by exponent sum."""
    cycle = tuple((i + 1) % p for i in range(p))
    return {x: cycle for x in letters}


def lift(h: Subgroup, alphabet: Alphabet) -> Subgroup:
    """The same subgroup viewed inside a free group on a larger alphabet."""
    if alphabet.letters[: len(h.alphabet)] != h.alphabet.letters:
        raise AlphabetMismatch("target alphabet must extend the source alphabet")
    g = h.graph
    return Subgroup(LabeledGraph(alphabet, g.num_vertices, g.tails, g.heads, g.labels, g.basepoint))


def random_generators(
    rng: np.random.Generator,
    num_letters: int,
    max_gens: int = 3,
    max_length: int = 12,
) -> list[Word]:
    """The property-suite model: 1..max_gens reduced words, lengths uniform in 1..max_length."""
    count = int(rng.integers(1, max_gens + 1))
    return [
        random_word(rng, num_letters, int(rng.integers(1, max_length + 1)))
        for _ in range(count)
    ]


def random_subgroup(
    rng: np.random.Generator,
    alphabet: Alphabet,
    max_gens: int = 3,
    max_length: int = 12,
) -> tuple[list[Word], Subgroup]:
    gens = random_generators(rng, len(alphabet), max_gens, max_length)
    return gens, from_generators(alphabet, gens)
