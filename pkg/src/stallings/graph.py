"""Labeled graphs over a signed alphabet, Stallings folding and coring.

Signed letters are encoded as integers: letter ``i`` of the alphabet with
exponent +1 is ``2*i``, with exponent -1 it is ``2*i + 1``.  The inverse of a
code is therefore ``code ^ 1`` and the natural integer order is the canonical
order (a,+1) < (a,-1) < (b,+1) < ...

Every unoriented edge ``i`` is stored once with a positive label and owns the
dart pair ``(2*i, 2*i + 1)``; dart ``2*i`` runs tail -> head with the positive
label and ``2*i + 1`` is its inverse.  Graphs are immutable.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

# Set by tests (or STALLINGS_VALIDATE=1) to run the invariant walk on every graph built.
VALIDATE = os.environ.get("STALLINGS_VALIDATE", "") not in ("", "0")


class GraphError(ValueError):
    pass


class NotFoldedError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of distinct letter identifiers."""

    letters: tuple[str, ...]

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        if len(set(letters)) != len(letters):
            raise ValueError(f"alphabet letters must be distinct: {letters!r}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter) -> bool:
        return letter in self._index

    @cached_property
    def _index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.letters)}

    @property
    def num_codes(self) -> int:
        return 2 * len(self.letters)

    def code(self, letter: str, exponent: int = 1) -> int:
        if exponent not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {exponent}")
        return 2 * self._index[letter] + (exponent == -1)

    def signed(self, code: int) -> tuple[str, int]:
        return self.letters[code >> 1], -1 if code & 1 else 1

    def extend(self, more: Iterable[str]) -> "Alphabet":
        return Alphabet(self.letters + tuple(more))

    def __repr__(self) -> str:
        return f"Alphabet({' '.join(self.letters)!r})"


def inverse_code(code: int) -> int:
    return code ^ 1


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """A finite graph with an involution on darts and labels in the signed alphabet.

    Vertices are ``0 .. num_vertices - 1``.  ``names`` optionally carries the
    identifier each vertex had in some parent graph (pullbacks name their
    vertices by pairs), and is ignored by canonical forms.
    """

    alphabet: Alphabet
    num_vertices: int
    tails: tuple[int, ...]
    heads: tuple[int, ...]
    labels: tuple[int, ...]
    basepoint: int | None = None
    names: tuple[Hashable, ...] | None = None

    def __post_init__(self):
        if VALIDATE:
            validate(self)

    @classmethod
    def from_edges(
        cls,
        alphabet: Alphabet,
        num_vertices: int,
        edges: Iterable[tuple[int, int, int]],
        basepoint: int | None = None,
        names: Sequence[Hashable] | None = None,
    ) -> "LabeledGraph":
        """Build a graph from ``(tail, head, code)`` triples with codes of either sign."""
        tails, heads, labels = [], [], []
        for u, v, c in edges:
            if c & 1:
                u, v, c = v, u, c ^ 1
            tails.append(u)
            heads.append(v)
            labels.append(c)
        return cls(
            alphabet,
            num_vertices,
            tuple(tails),
            tuple(heads),
            tuple(labels),
            basepoint,
            None if names is None else tuple(names),
        )

    # -- dart structure ---------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    @property
    def darts(self) -> range:
        return range(2 * len(self.labels))

    @staticmethod
    def inv(dart: int) -> int:
        return dart ^ 1

    def tail(self, dart: int) -> int:
        i = dart >> 1
        return self.heads[i] if dart & 1 else self.tails[i]

    def head(self, dart: int) -> int:
        i = dart >> 1
        return self.tails[i] if dart & 1 else self.heads[i]

    def label(self, dart: int) -> int:
        return self.labels[dart >> 1] ^ (dart & 1)

    def edges(self) -> Iterable[tuple[int, int, int]]:
        return zip(self.tails, self.heads, self.labels)

    def vertex_name(self, v: int) -> Hashable:
        return v if self.names is None else self.names[v]

    @cached_property
    def stars(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the outgoing darts as sorted ``(code, dart)`` pairs."""
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for i, (u, v, c) in enumerate(self.edges()):
            out[u].append((c, 2 * i))
            out[v].append((c ^ 1, 2 * i + 1))
        return tuple(tuple(sorted(s)) for s in out)

    def degree(self, v: int) -> int:
        return len(self.stars[v])

    @cached_property
    def successors(self) -> tuple[dict[int, int], ...]:
        """Per vertex, ``code -> target vertex``.  Only meaningful when folded."""
        if not is_folded(self):
            raise NotFoldedError("successor maps need a folded graph")
        return tuple({c: self.head(d) for c, d in star} for star in self.stars)

    def transition_table(self) -> np.ndarray:
        """Dense ``(num_vertices + 1, num_codes + 1)`` table for batch tracing.

        Row ``num_vertices`` is an absorbing failure state; column
        ``num_codes`` is a padding symbol that leaves the state unchanged.
        """
        n, k = self.num_vertices, self.alphabet.num_codes
        table = np.full((n + 1, k + 1), n, dtype=np.int64)
        table[:, k] = np.arange(n + 1)
        for v, succ in enumerate(self.successors):
            for c, t in succ.items():
                table[v, c] = t
        return table

    def __repr__(self) -> str:
        return (
            f"LabeledGraph(|V|={self.num_vertices}, |E|={self.num_edges}, "
            f"basepoint={self.basepoint})"
        )


def validate(g: LabeledGraph) -> None:
    """Walk every dart and check the involution, endpoint and label invariants."""
    n = g.num_vertices
    if not (len(g.tails) == len(g.heads) == len(g.labels)):
        raise GraphError("edge arrays have different lengths")
    if g.basepoint is not None and not 0 <= g.basepoint < n:
        raise GraphError(f"basepoint {g.basepoint} out of range")
    if g.names is not None and len(g.names) != n:
        raise GraphError("names must have one entry per vertex")
    k = g.alphabet.num_codes
    for e in g.darts:
        f = g.inv(e)
        if f == e or g.inv(f) != e:
            raise GraphError(f"dart {e}: inv is not a fixed-point-free involution")
        if not (0 <= g.tail(e) < n and 0 <= g.head(e) < n):
            raise GraphError(f"dart {e}: endpoint out of range")
        if g.tail(f) != g.head(e) or g.head(f) != g.tail(e):
            raise GraphError(f"dart {e}: inverse dart does not swap endpoints")
        if not 0 <= g.label(e) < k:
            raise GraphError(f"dart {e}: label {g.label(e)} outside alphabet")
        if g.label(f) != g.label(e) ^ 1:
            raise GraphError(f"dart {e}: label of inverse is not the inverse label")


def is_folded(g: LabeledGraph) -> bool:
    for star in g.stars:
        for (c1, _), (c2, _) in zip(star, star[1:]):
            if c1 == c2:
                return False
    return True


def euler_characteristic(g: LabeledGraph) -> int:
    return g.num_vertices - g.num_edges


def component_ids(g: LabeledGraph) -> list[int]:
    """Component index per vertex, numbered by least contained vertex."""
    comp = [-1] * g.num_vertices
    count = 0
    for s in g.vertices:
        if comp[s] >= 0:
            continue
        comp[s] = count
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for _, d in g.stars[u]:
                w = g.head(d)
                if comp[w] < 0:
                    comp[w] = count
                    queue.append(w)
        count += 1
    return comp


def is_connected(g: LabeledGraph) -> bool:
    return g.num_vertices > 0 and max(component_ids(g)) == 0


def induced_subgraph(g: LabeledGraph, keep: Iterable[int]) -> LabeledGraph:
    """Subgraph on ``keep`` (in increasing order); names follow the vertices."""
    keep = sorted(set(keep))
    new = {v: i for i, v in enumerate(keep)}
    edges = [
        (new[u], new[v], c) for u, v, c in g.edges() if u in new and v in new
    ]
    base = new.get(g.basepoint) if g.basepoint is not None else None
    return LabeledGraph.from_edges(
        g.alphabet, len(keep), edges, base, [g.vertex_name(v) for v in keep]
    )


def connected_components(g: LabeledGraph) -> list[LabeledGraph]:
    comp = component_ids(g)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(comp):
        groups.setdefault(c, []).append(v)
    return [induced_subgraph(g, groups[c]) for c in sorted(groups)]


def reduced_rank(g: LabeledGraph) -> int:
    if not is_connected(g):
        raise DisconnectedError("reduced rank needs a connected graph")
    return max(-euler_characteristic(g), 0)


def rank(g: LabeledGraph) -> int:
    if not is_connected(g):
        raise DisconnectedError("rank needs a connected graph")
    return 1 - euler_characteristic(g)


class _Basepoint:
    def __repr__(self):
        return "BASEPOINT"


BASEPOINT = _Basepoint()


def core_vertices(g: LabeledGraph, base=BASEPOINT) -> list[int]:
    """Vertices surviving iterated removal of degree <= 1 vertices other than ``base``."""
    if base is BASEPOINT:
        base = g.basepoint
    deg = [len(s) for s in g.stars]
    alive = [True] * g.num_vertices
    edge_alive = [True] * g.num_edges
    queue = deque(v for v in g.vertices if deg[v] <= 1 and v != base)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for _, d in g.stars[v]:
            i = d >> 1
            if not edge_alive[i]:
                continue
            edge_alive[i] = False
            w = g.head(d)
            deg[w] -= 1
            if alive[w] and deg[w] <= 1 and w != base:
                queue.append(w)
    return [v for v in g.vertices if alive[v]]


def core(g: LabeledGraph, base=BASEPOINT) -> LabeledGraph:
    """Prune hanging trees, keeping ``base`` (default: the basepoint; None keeps nothing)."""
    return induced_subgraph(g, core_vertices(g, base))


def fold(g: LabeledGraph, rng=None) -> LabeledGraph:
    """Stallings folding by union-find with a coincidence queue.

    ``rng`` (a ``random.Random``-like object) shuffles the order in which edges
    are inserted; the result is the same up to canonical form.
    """
    n = g.num_vertices
    parent = list(range(n))
    out: list[dict[int, int]] = [{} for _ in range(n)]

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending: deque[tuple[int, int]] = deque()

    def attach(u: int, v: int, c: int) -> None:
        # u, v representatives
        if c in out[u]:
            pending.append((out[u][c], v))
        elif (c ^ 1) in out[v]:
            pending.append((out[v][c ^ 1], u))
        else:
            out[u][c] = v
            out[v][c ^ 1] = u

    def drain() -> None:
        while pending:
            x, y = pending.popleft()
            x, y = find(x), find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            parent[y] = x
            moved, out[y] = out[y], {}
            for c, t in moved.items():
                t = find(t)
                if c in out[x]:
                    pending.append((out[x][c], t))
                else:
                    out[x][c] = t

    order = list(range(g.num_edges))
    if rng is not None:
        rng.shuffle(order)
    for i in order:
        attach(find(g.tails[i]), find(g.heads[i]), g.labels[i])
        drain()

    reps = [v for v in range(n) if parent[v] == v]
    new = {v: i for i, v in enumerate(reps)}
    edges = []
    for u in reps:
        for c, t in sorted(out[u].items()):
            if not c & 1:
                edges.append((new[u], new[find(t)], c))
    base = new[find(g.basepoint)] if g.basepoint is not None else None
    return LabeledGraph.from_edges(
        g.alphabet, len(reps), edges, base, [g.vertex_name(v) for v in reps]
    )


def disjoint_union(graphs: Sequence[LabeledGraph]) -> tuple[LabeledGraph, list[int]]:
    """Disjoint union; returns the graph and the vertex offset of each part.

    The basepoint of the first part (if any) becomes the basepoint.
    """
    if not graphs:
        raise ValueError("need at least one graph")
    alphabet = graphs[0].alphabet
    offsets, edges, total = [], [], 0
    for h in graphs:
        if h.alphabet != alphabet:
            raise GraphError("alphabet mismatch")
        offsets.append(total)
        edges.extend((u + total, v + total, c) for u, v, c in h.edges())
        total += h.num_vertices
    base = graphs[0].basepoint
    return LabeledGraph.from_edges(alphabet, total, edges, base), offsets


def wedge(graphs: Sequence[LabeledGraph]) -> LabeledGraph:
    """Identify the basepoints of all graphs (unfolded)."""
    union, offsets = disjoint_union(graphs)
    glue = {off + h.basepoint: offsets[0] + graphs[0].basepoint for h, off in zip(graphs, offsets)}
    # relabel so vertex ids stay dense
    survivors = [v for v in union.vertices if glue.get(v, v) == v]
    new = {v: i for i, v in enumerate(survivors)}
    edges = [(new[glue.get(u, u)], new[glue.get(v, v)], c) for u, v, c in union.edges()]
    return LabeledGraph.from_edges(
        union.alphabet, len(survivors), edges, new[glue[offsets[0] + graphs[0].basepoint]]
    )


def _rooted_encoding(g: LabeledGraph, root: int) -> tuple:
    number = {root: 0}
    order = [root]
    rows = []
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        row = []
        for c, d in g.stars[u]:
            w = g.head(d)
            if w not in number:
                number[w] = len(order)
                order.append(w)
            row.append((c, number[w]))
        rows.append(tuple(row))
    return (len(order), tuple(rows))


def canonical_form(g: LabeledGraph, rooted: bool = True) -> tuple:
    """Renaming-invariant encoding of a folded connected graph.

    Rooted mode is a breadth-first numbering from the basepoint, expanding
    darts in code order.  Unrooted mode minimises over roots; only vertices in
    the rarest star-signature class are tried, which is an isomorphism
    invariant and keeps large graphs cheap.
    """
    if not is_folded(g):
        raise NotFoldedError("canonical form needs a folded graph")
    head = (g.alphabet.letters,)
    if rooted:
        if g.basepoint is None:
            raise GraphError("rooted canonical form needs a basepoint")
        return head + ("rooted",) + _rooted_encoding(g, g.basepoint)
    if not is_connected(g):
        raise DisconnectedError("canonical form needs a connected graph")
    classes: dict[tuple[int, ...], list[int]] = {}
    for v, star in enumerate(g.stars):
        classes.setdefault(tuple(c for c, _ in star), []).append(v)
    _, roots = min(classes.items(), key=lambda kv: (len(kv[1]), kv[0]))
    return head + ("unrooted",) + min(_rooted_encoding(g, r) for r in roots)


def relabel(g: LabeledGraph, permutation: Sequence[int]) -> LabeledGraph:
    """Rename vertex ``v`` to ``permutation[v]`` (edges keep their order)."""
    edges = [(permutation[u], permutation[v], c) for u, v, c in g.edges()]
    base = None if g.basepoint is None else permutation[g.basepoint]
    return LabeledGraph.from_edges(g.alphabet, g.num_vertices, edges, base)
