"""The three-cycle graphs Γ(k, l, m, n), the counterexample pair and its certificates,
and the normal-subgroup example with arbitrarily large extended join."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Sequence

from .graph import (
    Alphabet,
    LabeledGraph,
    canonical_form,
    connected_components,
    core,
    euler_characteristic,
    is_folded,
)
from .inequalities import DoubleCosetReport, InequalityReport, double_cosets, extended_join, im_inequality
from .subgroup import (
    Subgroup,
    conjugate,
    free_group,
    join,
    kernel_of_finite_quotient,
    cyclic_images,
    lift,
    pullback,
)

GAMMA_ALPHABET = Alphabet("abcde")


class VerificationError(AssertionError):
    pass


@dataclass(frozen=True)
class GammaParams:
    """Parameters of Γ(k, l, m, n).

    ``d_attach[i]`` is the q_b phase index joined by a d-edge to the i-th
    phase vertex of q_a; ``e_attach`` does the same for e-edges and q_c.
    Defaults: d-edges from phases 0..l-1, e-edges from the next n phases, or
    from 0..n-1 when l + n > m.
    """

    k: int
    l: int
    m: int
    n: int
    d_attach: tuple[int, ...] | None = None
    e_attach: tuple[int, ...] | None = None
    degree3: bool = False

    def __post_init__(self):
        k, l, m, n = self.k, self.l, self.m, self.n
        if min(k, l, m, n) < 1:
            raise ValueError("k, l, m, n must be positive")
        if m < max(l, n):
            raise ValueError(f"need m >= max(l, n), got m={m}, l={l}, n={n}")
        d = tuple(range(l)) if self.d_attach is None else tuple(self.d_attach)
        if self.e_attach is not None:
            e = tuple(self.e_attach)
        elif l + n <= m:
            e = tuple(range(l, l + n))
        else:
            e = tuple(range(n))
        object.__setattr__(self, "d_attach", d)
        object.__setattr__(self, "e_attach", e)
        if len(d) != l or len(e) != n:
            raise ValueError("need exactly l d-attachments and n e-attachments")
        for name, att in (("d_attach", d), ("e_attach", e)):
            if len(set(att)) != len(att) or not all(0 <= x < m for x in att):
                raise ValueError(f"{name} must be distinct phase indices in 0..{m - 1}")
        if self.degree3:
            if l + n > m:
                raise ValueError("degree-3 normalization needs l + n <= m")
            if set(d) & set(e):
                raise ValueError("degree-3 normalization needs disjoint attachments")

    @property
    def cycle_lengths(self) -> tuple[int, int, int]:
        return self.k * self.l, self.k * self.m, self.k * self.n


def build_gamma(p: GammaParams) -> Subgroup:
    """H(Γ(k, l, m, n)) rooted at the origin of q_b.

    Vertices: q_b occupies 0..km-1 (origin 0), then q_a, then q_c.
    """
    k = p.k
    la, lb, lc = p.cycle_lengths
    A = GAMMA_ALPHABET
    a, b, c, d, e = (A.code(x) for x in "abcde")
    oa, oc = lb, lb + la
    edges = []
    edges += [(i, (i + 1) % lb, b) for i in range(lb)]
    edges += [(oa + i, oa + (i + 1) % la, a) for i in range(la)]
    edges += [(oc + i, oc + (i + 1) % lc, c) for i in range(lc)]
    edges += [(k * j, oa + k * i, d) for i, j in enumerate(p.d_attach)]
    edges += [(k * j, oc + k * i, e) for i, j in enumerate(p.e_attach)]
    return Subgroup(LabeledGraph.from_edges(A, la + lb + lc, edges, 0))


def gamma_base() -> Subgroup:
    """Γ(1,1,1,1): one vertex carries the b-loop and both connecting edges."""
    return build_gamma(GammaParams(1, 1, 1, 1, (0,), (0,)))


def _letter_cycle(g: LabeledGraph, code: int, start: int) -> list[int] | None:
    succ = g.successors
    cycle = [start]
    v = succ[start].get(code)
    while v is not None and v != start:
        cycle.append(v)
        v = succ[v].get(code)
    return cycle if v == start else None


def recognize_gamma(g: LabeledGraph) -> GammaParams | None:
    """Read off the parameters of a graph of the form Γ(k, l, m, n), or None.

    The basepoint must be the origin of q_b.  Works on any folded graph over
    a..e; the origin of q_a (q_c) is taken at the head of the d-edge (e-edge)
    leaving the earliest q_b position.
    """
    if g.alphabet != GAMMA_ALPHABET or g.basepoint is None:
        return None
    A = GAMMA_ALPHABET
    a, b, c, d, e = (A.code(x) for x in "abcde")
    if not is_folded(g):
        return None
    qb = _letter_cycle(g, b, g.basepoint)
    if qb is None:
        return None
    pos_b = {v: i for i, v in enumerate(qb)}
    d_edges = sorted((pos_b.get(u, -1), v) for u, v, x in g.edges() if x == d)
    e_edges = sorted((pos_b.get(u, -1), v) for u, v, x in g.edges() if x == e)
    if not d_edges or not e_edges or d_edges[0][0] < 0 or e_edges[0][0] < 0:
        return None
    qa = _letter_cycle(g, a, d_edges[0][1])
    qc = _letter_cycle(g, c, e_edges[0][1])
    if qa is None or qc is None:
        return None
    if len(qa) + len(qb) + len(qc) != g.num_vertices or len(set(qa) | set(qb) | set(qc)) != g.num_vertices:
        return None
    l, n = len(d_edges), len(e_edges)
    if g.num_edges != len(qa) + len(qb) + len(qc) + l + n:
        return None
    if len(qa) % l or len(qc) % n:
        return None
    k = len(qa) // l
    if len(qc) != k * n or len(qb) % k:
        return None
    m = len(qb) // k

    def attachments(edges, cycle, count):
        pos = {v: i for i, v in enumerate(cycle)}
        att = [None] * count
        for pb, v in edges:
            if pb % k or v not in pos or pos[v] % k:
                return None
            att[pos[v] // k] = pb // k
        return None if None in att else tuple(att)

    d_att = attachments(d_edges, qa, l)
    e_att = attachments(e_edges, qc, n)
    if d_att is None or e_att is None:
        return None
    try:
        params = GammaParams(k, l, m, n, d_att, e_att)
    except ValueError:
        return None
    # the edge-count check above leaves no room for anything else, but confirm
    if canonical_form(build_gamma(params).graph) != canonical_form(g):
        return None
    return params


def theorem_pair(
    d1: Sequence[int] = (0,),
    e1: Sequence[int] = (1, 2),
    d2: Sequence[int] = (0, 1),
    e2: Sequence[int] = (2, 3, 4),
) -> tuple[Subgroup, Subgroup]:
    """Δ1 = Γ(7,1,3,2) and Δ2 = Γ(11,2,5,3), every phase vertex of degree 3."""
    delta1 = build_gamma(GammaParams(7, 1, 3, 2, tuple(d1), tuple(e1), degree3=True))
    delta2 = build_gamma(GammaParams(11, 2, 5, 3, tuple(d2), tuple(e2), degree3=True))
    return delta1, delta2


@dataclass(frozen=True)
class CertificateC1:
    """Degree-3 witnesses: ``(side, vertex of Δ_side, pullback vertex or None)``."""

    checked_pairs: tuple[tuple[int, int, tuple[int, int] | None], ...]

    @property
    def verdict(self) -> bool:
        return all(w is not None for _, _, w in self.checked_pairs)


def certificate_c1(d1: Subgroup, d2: Subgroup) -> CertificateC1:
    """Every degree-3 vertex of each graph has a degree-3 preimage in the cored pullback.

    If so, a subgroup K_i <= H_i whose graph Ψ factors through has at least
    as many branch vertices as Δ_i, so r̄(K_i) >= r̄(H_i); a free factor K_i
    with K_1 ∩ K_2 = H_1 ∩ H_2 must then be all of H_i.
    """
    psi = core(pullback(d1, d2))
    fibres: list[dict[int, tuple[int, int]]] = [{}, {}]
    for w in psi.vertices:
        if psi.degree(w) == 3:
            name = psi.names[w]
            for side in (0, 1):
                fibres[side].setdefault(name[side], name)
    pairs = []
    for side, h in enumerate((d1, d2)):
        for v in h.graph.vertices:
            if h.graph.degree(v) == 3:
                pairs.append((side + 1, v, fibres[side].get(v)))
    return CertificateC1(tuple(pairs))


@dataclass(frozen=True)
class CertificateC2:
    """Exponent-sum certificate.  A False flag means "does not apply", never "C2 fails"."""

    modulus_1: int
    modulus_2: int
    exponent_letters: frozenset[str]
    verified: tuple[bool, bool]
    join_identified: bool

    @property
    def certified(self) -> bool:
        return (
            all(self.verified)
            and self.join_identified
            and self.modulus_1 > 1
            and self.modulus_2 > 1
        )


def exponent_sums_vanish(h: Subgroup, modulus: int, letters) -> bool:
    """Every cycle of the graph has exponent sum over ``letters`` divisible by ``modulus``.

    Spanning-tree potentials in Z/modulus; each non-tree edge must close up.
    """
    g = h.graph
    A = g.alphabet
    weight = [0] * A.num_codes
    for x in letters:
        weight[A.code(x)] = 1
        weight[A.code(x, -1)] = -1
    pot: list[int | None] = [None] * g.num_vertices
    for s in g.vertices:
        if pot[s] is not None:
            continue
        pot[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for c, dart in g.stars[u]:
                w = g.head(dart)
                want = (pot[u] + weight[c]) % modulus
                if pot[w] is None:
                    pot[w] = want
                    queue.append(w)
                elif pot[w] != want:
                    return False
    return True


def certificate_c2(
    d1: Subgroup,
    d2: Subgroup,
    m1: int = 7,
    m2: int = 11,
    letters=("a", "b", "c"),
    join_target: Subgroup | None = None,
) -> CertificateC2:
    """Certify that H1 ∩ H2 holds no nontrivial free factor of <H1, H2>.

    When <H1, H2> = <dad^-1, b, ece^-1> and every element of H_i has
    {a,b,c}-exponent sum divisible by m_i > 1, each element of the
    intersection abelianises, in that basis, to a vector divisible by m1,
    so none is primitive.
    """
    letters = frozenset(letters)
    if join_target is None:
        join_target = gamma_base()
    joined = join(d1, d2)
    identified = joined.alphabet == join_target.alphabet and joined == join_target
    return CertificateC2(
        m1,
        m2,
        letters,
        (exponent_sums_vanish(d1, m1, letters), exponent_sums_vanish(d2, m2, letters)),
        identified,
    )


@dataclass
class TheoremVerification:
    inequality: InequalityReport
    pullback_components: int
    pullback_shape: GammaParams | None
    minus_chi: int
    c1: CertificateC1
    c2: CertificateC2
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        out = self.inequality.as_dict()
        shape = self.pullback_shape
        out["certificates"] = {
            "c1": self.c1.verdict,
            "c1_checked": len(self.c1.checked_pairs),
            "c2": self.c2.certified,
            "c2_verified": list(self.c2.verified),
            "c2_join_identified": self.c2.join_identified,
            "c2_moduli": [self.c2.modulus_1, self.c2.modulus_2],
            "c2_letters": sorted(self.c2.exponent_letters),
            "pullback_components": self.pullback_components,
            "pullback_minus_chi": self.minus_chi,
            "pullback_shape": None
            if shape is None
            else {
                "k": shape.k,
                "l": shape.l,
                "m": shape.m,
                "n": shape.n,
                "cycle_lengths": list(shape.cycle_lengths),
            },
        }
        return out


def verify_theorem(strict: bool = True, **attachments) -> TheoremVerification:
    """Recompute every claim about the counterexample pair.

    With ``strict`` a mismatch raises :class:`VerificationError` naming the
    first divergent quantity; otherwise the failures are listed on the record.
    """
    h1, h2 = theorem_pair(**attachments)
    report = im_inequality(h1, h2)
    psi = core(pullback(h1, h2))
    comps = connected_components(psi)
    shape = recognize_gamma(comps[0]) if len(comps) == 1 else None
    result = TheoremVerification(
        report,
        len(comps),
        shape,
        -euler_characteristic(psi),
        certificate_c1(h1, h2),
        certificate_c2(h1, h2, 7, 11, "abc"),
    )
    checks = [
        ("r̄(H1)", report.r1, 3),
        ("r̄(H2)", report.r2, 5),
        ("r̄(H1 ∩ H2)", report.r_meet, 8),
        ("r̄(<H1, H2>)", report.r_join, 2),
        ("lhs", report.lhs, 16),
        ("rhs", report.rhs, 15),
        ("inequality holds", report.holds, False),
        ("pullback components", result.pullback_components, 1),
        ("pullback -χ", result.minus_chi, 8),
        ("pullback cycle lengths", shape and shape.cycle_lengths, (154, 1155, 462)),
        ("pullback (k, l, m, n)", shape and (shape.k, shape.l, shape.m, shape.n), (77, 2, 15, 6)),
        ("certificate C1", result.c1.verdict, True),
        ("certificate C2", result.c2.certified, True),
    ]
    for name, got, want in checks:
        if got != want:
            result.failures.append(f"{name}: got {got!r}, expected {want!r}")
    if strict and result.failures:
        raise VerificationError(result.failures[0])
    return result


# -- the closing example -------------------------------------------------

QuotientSpec = Mapping[str, Sequence[int]]


def cyclic_preset(p: int) -> dict[str, tuple[int, ...]]:
    """F(a, b) -> Z/p, both generators to the standard p-cycle."""
    return cyclic_images(p, "ab")


def example_alphabet(k: int) -> Alphabet:
    """{a, b, c_1, ..., c_{k-1}} written as a, b, c, d, ... (c_j is the (j+2)-th letter)."""
    if not 1 <= k <= 25:
        raise ValueError("k must be in 1..25 with single-letter names")
    return Alphabet("abcdefghijklmnopqrstuvwxyz"[: k + 1])


def build_example(
    k: int,
    q0: QuotientSpec | None = None,
    q1: QuotientSpec | None = None,
) -> tuple[Subgroup, Subgroup, Subgroup]:
    """(H0, H1, H2) with H2 = <H0, c_1 H0 c_1^-1, ..., c_{k-1} H0 c_{k-1}^-1>.

    H0 and H1 are kernels of maps F(a, b) -> finite groups of coprime order,
    viewed in the larger free group.
    """
    q0 = cyclic_preset(2) if q0 is None else q0
    q1 = cyclic_preset(3) if q1 is None else q1
    base = Alphabet("ab")
    k0 = kernel_of_finite_quotient(base, q0)
    k1 = kernel_of_finite_quotient(base, q1)
    o0, o1 = k0.graph.num_vertices, k1.graph.num_vertices
    if o0 == 1 or o1 == 1:
        raise ValueError("quotients must be nontrivial")
    if gcd(o0, o1) != 1:
        raise ValueError(f"quotient orders {o0} and {o1} are not coprime")
    alphabet = example_alphabet(k)
    h0, h1 = lift(k0, alphabet), lift(k1, alphabet)
    conjugates = [conjugate(h0, (alphabet.code(x),)) for x in alphabet.letters[2:]]
    h2 = join(h0, *conjugates)
    return h0, h1, h2


@dataclass
class ExampleVerification:
    k: int
    r1: int
    r2: int
    cosets: DoubleCosetReport
    extended_join: Subgroup
    failures: list[str] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.cosets.total

    @property
    def product(self) -> int:
        return self.r1 * self.r2

    @property
    def extended_join_rank(self) -> int:
        return self.extended_join.reduced_rank

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "r1": self.r1,
            "r2": self.r2,
            "r_meet": self.total,
            "r_join": self.extended_join_rank,
            "lhs": self.total * self.extended_join_rank,
            "rhs": self.product,
            "holds": self.total * self.extended_join_rank <= self.product,
            "certificates": {
                "k": self.k,
                "double_cosets": len(self.cosets),
                "extended_join_is_free_group": self.extended_join == free_group(self.extended_join.alphabet),
                "total_equals_product": self.total == self.product,
            },
        }


def verify_example(
    k: int,
    q0: QuotientSpec | None = None,
    q1: QuotientSpec | None = None,
    strict: bool = True,
) -> ExampleVerification:
    """Check r̄(H1, H2) = r̄(H1) r̄(H2) and <H1, H2, S(H1, H2)> = F(a, b, c_1, ...) of r̄ = k."""
    _, h1, h2 = build_example(k, q0, q1)
    report = double_cosets(h1, h2)
    big = extended_join(h1, h2, report)
    result = ExampleVerification(k, h1.reduced_rank, h2.reduced_rank, report, big)
    checks = [
        ("r̄(H1, H2)", report.total, result.product),
        ("extended join is the free group", big == free_group(h1.alphabet), True),
        ("r̄(extended join)", big.reduced_rank, k),
    ]
    for name, got, want in checks:
        if got != want:
            result.failures.append(f"{name}: got {got!r}, expected {want!r}")
    if strict and result.failures:
        raise VerificationError(result.failures[0])
    return result
