"""Text formats: graphs, subgroup files, DOT export and the findings log.

Graph format::

    alphabet: a b c
    basepoint: 0          (or "basepoint: -")
    edge 0 1 a            (one line per unoriented edge, positive letter)

Subgroup format::

    alphabet: a b
    gen abA
    gen bb

A subgroup file may instead hold a graph (detected by its ``basepoint:``
line).  Lines starting with ``#`` are comments.

Findings log: one tab-separated line per finding with seed, trial index,
comma-separated generators of H1 and of H2, r1, r2, r_meet, r_join.
"""

from __future__ import annotations

from pathlib import Path

from .graph import Alphabet, LabeledGraph
from .subgroup import Subgroup, from_generators
from .words import Word, WordSyntaxError, format_word, parse_word

__all__ = [
    "FormatError",
    "parse_word",
    "format_word",
    "read_graph",
    "write_graph",
    "read_subgroup",
    "write_subgroup",
    "export_dot",
    "format_finding",
    "parse_finding",
]


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((i, line))
    return out


def _parse_alphabet(lineno: int, line: str) -> Alphabet:
    key, sep, rest = line.partition(":")
    if key.strip() != "alphabet" or not sep:
        raise FormatError("expected 'alphabet: <letters>'", lineno)
    letters = rest.split()
    for x in letters:
        if len(x) != 1 or not ("a" <= x <= "z"):
            raise FormatError(f"letters must be single characters a-z, got {x!r}", lineno)
    try:
        return Alphabet(letters)
    except ValueError as exc:
        raise FormatError(str(exc), lineno) from None


def _parse_graph_body(alphabet: Alphabet, lines: list[tuple[int, str]]) -> LabeledGraph:
    lineno, line = lines[0]
    key, sep, rest = line.partition(":")
    if key.strip() != "basepoint" or not sep:
        raise FormatError("expected 'basepoint: <vertex>' or 'basepoint: -'", lineno)
    rest = rest.strip()
    try:
        base = None if rest == "-" else int(rest)
    except ValueError:
        raise FormatError(f"bad basepoint {rest!r}", lineno) from None
    raw_edges = []
    ids = set() if base is None else {base}
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "edge":
            raise FormatError("expected 'edge <tail> <head> <letter>'", lineno)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise FormatError("vertex ids must be integers", lineno) from None
        if parts[3] not in alphabet:
            raise FormatError(f"unknown letter {parts[3]!r}", lineno)
        raw_edges.append((u, v, alphabet.code(parts[3])))
        ids.update((u, v))
    order = sorted(ids)
    new = {x: i for i, x in enumerate(order)}
    edges = [(new[u], new[v], c) for u, v, c in raw_edges]
    return LabeledGraph.from_edges(
        alphabet, len(order), edges, None if base is None else new[base]
    )


def parse_graph(text: str) -> LabeledGraph:
    lines = _lines(text)
    if len(lines) < 2:
        raise FormatError("graph file needs 'alphabet:' and 'basepoint:' lines")
    alphabet = _parse_alphabet(*lines[0])
    return _parse_graph_body(alphabet, lines[1:])


def format_graph(g: LabeledGraph) -> str:
    out = [
        "alphabet: " + " ".join(g.alphabet.letters),
        "basepoint: " + ("-" if g.basepoint is None else str(g.basepoint)),
    ]
    for u, v, c in g.edges():
        out.append(f"edge {u} {v} {g.alphabet.letters[c >> 1]}")
    return "\n".join(out) + "\n"


def parse_subgroup(text: str) -> Subgroup:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty subgroup file")
    alphabet = _parse_alphabet(*lines[0])
    rest = lines[1:]
    if rest and rest[0][1].startswith("basepoint"):
        g = _parse_graph_body(alphabet, rest)
        if g.basepoint is None:
            raise FormatError("a subgroup graph needs a basepoint", rest[0][0])
        return Subgroup.from_graph(g)
    gens = []
    for lineno, line in rest:
        parts = line.split()
        if not parts or parts[0] != "gen" or len(parts) > 2:
            raise FormatError("expected 'gen <word>'", lineno)
        text_word = parts[1] if len(parts) == 2 else ""
        try:
            gens.append(parse_word(alphabet, text_word))
        except WordSyntaxError as exc:
            raise FormatError(str(exc), lineno) from None
    return from_generators(alphabet, gens)


def format_subgroup(h: Subgroup, as_graph: bool = False) -> str:
    if as_graph:
        return format_graph(h.graph)
    out = ["alphabet: " + " ".join(h.alphabet.letters)]
    out += ["gen " + format_word(h.alphabet, w) for w in h.generators()]
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> LabeledGraph:
    return parse_graph(Path(path).read_text())


def write_graph(g: LabeledGraph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))


def read_subgroup(path: str | Path) -> Subgroup:
    return parse_subgroup(Path(path).read_text())


def write_subgroup(h: Subgroup, path: str | Path, as_graph: bool = False) -> None:
    Path(path).write_text(format_subgroup(h, as_graph))


def export_dot(g: LabeledGraph | Subgroup, name: str = "G") -> str:
    """One arrow per positively labeled dart; the basepoint is drawn doubled."""
    if isinstance(g, Subgroup):
        g = g.graph
    out = [f"digraph {name} {{"]
    for v in g.vertices:
        shape = "doublecircle" if v == g.basepoint else "circle"
        out.append(f"  {v} [shape={shape}];")
    for u, v, c in g.edges():
        out.append(f'  {u} -> {v} [label="{g.alphabet.letters[c >> 1]}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def format_finding(
    alphabet: Alphabet,
    seed: int,
    trial: int,
    gens1: list[Word],
    gens2: list[Word],
    ranks: tuple[int, int, int, int],
) -> str:
    fields = [
        str(seed),
        str(trial),
        ",".join(format_word(alphabet, w) for w in gens1),
        ",".join(format_word(alphabet, w) for w in gens2),
    ]
    return "\t".join(fields + [str(r) for r in ranks])


def parse_finding(alphabet: Alphabet, line: str) -> tuple[int, int, list[Word], list[Word], tuple[int, ...]]:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 8:
        raise FormatError(f"findings line needs 8 tab-separated fields, got {len(parts)}")
    gens = [[parse_word(alphabet, w) for w in p.split(",") if w] for p in parts[2:4]]
    return int(parts[0]), int(parts[1]), gens[0], gens[1], tuple(int(x) for x in parts[4:])
